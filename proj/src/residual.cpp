#include "posdiv/residual.hpp"

namespace posdiv {

namespace {

i128 wrap(i128 raw, const ResidualFormat& fmt)
{
    return wrap_signed(raw, fmt.width());
}

}  // namespace

Residual Residual::non_redundant(i128 value, ResidualFormat fmt)
{
    return Residual{wrap(value, fmt), 0, fmt, false};
}

Residual Residual::carry_save(i128 sum, i128 carry, ResidualFormat fmt)
{
    return Residual{wrap(sum, fmt), wrap(carry, fmt), fmt, true};
}

i128 Residual::value() const
{
    return wrap(sum_ + carry_, fmt_);
}

Residual init_residual(i128 x_raw, int x_frac_bits, const DigitSet& digits, ResidualFormat fmt,
                       bool carry_save)
{
    const int shift = fmt.frac_bits - x_frac_bits - digits.init_shift();
    if (shift < 0) {
        throw std::invalid_argument("residual format too narrow for initialization shift");
    }
    const i128 w0 = x_raw << shift;
    return carry_save ? Residual::carry_save(w0, 0, fmt) : Residual::non_redundant(w0, fmt);
}

bool within_bound(i128 w_raw, i128 d_raw, const DigitSet& digits)
{
    const i128 mag = w_raw < 0 ? -w_raw : w_raw;
    // |w| <= a/(r-1) * d
    return mag * digits.rho_den() <= d_raw * digits.rho_num();
}

Residual recurrence_step(const Residual& w, i128 d_raw, int digit, int radix)
{
    const ResidualFormat& fmt = w.format();
    const int lg = radix == 4 ? 2 : 1;
    const i128 multiple = static_cast<i128>(digit) * d_raw;
    if (!w.redundant()) {
        return Residual::non_redundant((w.value() << lg) - multiple, fmt);
    }
    const u128 m = low_mask(fmt.width());
    const u128 a = static_cast<u128>(w.sum_word() << lg) & m;
    const u128 b = static_cast<u128>(w.carry_word() << lg) & m;
    // -q*d as an inverted multiple plus a hot one in the carry LSB,
    // which is always free after the carry word's left shift.
    u128 c = 0;
    u128 hot = 0;
    if (digit > 0) {
        c = ~static_cast<u128>(multiple) & m;
        hot = 1;
    } else if (digit < 0) {
        c = static_cast<u128>(-multiple) & m;
    }
    const u128 sum = a ^ b ^ c;
    const u128 carry = (((a & b) | (a & c) | (b & c)) << 1) | hot;
    return Residual::carry_save(static_cast<i128>(sum), static_cast<i128>(carry), fmt);
}

Residual step(const Residual& w, i128 d_raw, int digit, const DigitSet& digits)
{
    if (digit < -digits.max_digit() || digit > digits.max_digit()) {
        throw std::invalid_argument("quotient digit outside the digit set");
    }
    const ResidualFormat& fmt = w.format();
    // Exact (unwrapped) next value, used to detect a breach that the W-bit
    // window would otherwise hide.
    const i128 exact = (w.value() << digits.log2_radix()) - static_cast<i128>(digit) * d_raw;
    const Residual next = recurrence_step(w, d_raw, digit, digits.radix());
    if (next.value() != exact || !within_bound(exact, d_raw, digits)) {
        throw ResidualBoundError("residual bound |w| <= rho*d violated: w = " +
                                 to_decimal(exact, fmt.frac_bits) +
                                 ", d = " + to_decimal(d_raw, fmt.frac_bits) +
                                 ", digit = " + std::to_string(digit));
    }
    return next;
}

int shifted_estimate(const Residual& w, int radix, int est_frac_bits)
{
    const ResidualFormat& fmt = w.format();
    const int lg = radix == 4 ? 2 : 1;
    const int drop = fmt.frac_bits - est_frac_bits;
    const int est_width = kResidualIntBits + est_frac_bits;
    auto truncate = [&](i128 word) { return floor_shift(wrap(word << lg, fmt), drop); };

    i128 est;
    if (w.redundant()) {
        est = truncate(w.sum_word()) + truncate(w.carry_word());
    } else {
        est = truncate(w.sum_word());
    }
    return static_cast<int>(wrap_signed(est, est_width));
}

SignZero sign_zero_lookahead(i128 sum, i128 carry, int width)
{
    const u128 m = low_mask(width);
    const u128 a = static_cast<u128>(sum) & m;
    const u128 b = static_cast<u128>(carry) & m;
    const u128 half = a ^ b;

    // Kogge-Stone prefix over (generate, propagate): after log2(width)
    // levels, bit i of g is the carry out of position i.
    u128 g = a & b;
    u128 p = half;
    for (int span = 1; span < width; span <<= 1) {
        g |= p & (g << span);
        p &= p << span;
    }
    const bool carry_into_msb = width >= 2 && ((g >> (width - 2)) & 1) != 0;
    const bool msb_half = ((half >> (width - 1)) & 1) != 0;

    SignZero out;
    out.negative = msb_half != carry_into_msb;
    out.zero = half == (((a | b) << 1) & m);
    return out;
}

bool zero_lookahead3(i128 sum, i128 carry, i128 addend, int width)
{
    const u128 m = low_mask(width);
    const u128 a = static_cast<u128>(sum) & m;
    const u128 b = static_cast<u128>(carry) & m;
    const u128 c = static_cast<u128>(addend) & m;
    const u128 s = a ^ b ^ c;
    const u128 k = ((a & b) | (a & c) | (b & c)) << 1;
    return sign_zero_lookahead(static_cast<i128>(s), static_cast<i128>(k & m), width).zero;
}

std::string residual_hex(i128 word, ResidualFormat fmt)
{
    return to_hex(static_cast<u128>(word), fmt.width());
}

}  // namespace posdiv
