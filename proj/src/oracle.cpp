#include "posdiv/oracle.hpp"

#include <string>

namespace posdiv::oracle {

namespace {

__extension__ typedef unsigned __int128 u128;

// value = (-1)^negative * mantissa * 2^exp2
struct Dyadic {
    bool negative = false;
    std::uint64_t mantissa = 0;
    int exp2 = 0;
};

// Direct evaluation of the posit value formula, reading the pattern as a
// character string: sign, regime run, up to two exponent bits, fraction.
// Accepts widths up to 65 so that rounding midpoints of 64-bit posits can be
// evaluated as 65-bit posits.
Dyadic reference_decode(u128 bits, int width)
{
    const u128 mask = (u128{1} << width) - 1;
    auto to_string = [&](u128 v) {
        std::string s;
        for (int i = width - 1; i >= 0; --i) {
            s.push_back(((v >> i) & 1) ? '1' : '0');
        }
        return s;
    };
    std::string s = to_string(bits);
    Dyadic out;
    if (s[0] == '1') {
        out.negative = true;
        s = to_string((~bits + 1) & mask);
    }
    std::size_t pos = 1;
    const char lead = s[pos];
    int run = 0;
    while (pos < s.size() && s[pos] == lead) {
        ++run;
        ++pos;
    }
    if (pos < s.size()) {
        ++pos;  // terminator
    }
    const int k = lead == '1' ? run - 1 : -run;
    int e = 0;
    for (int i = 0; i < 2; ++i) {
        e <<= 1;
        if (pos < s.size()) {
            e |= s[pos++] - '0';
        }
    }
    std::uint64_t frac = 0;
    int frac_bits = 0;
    while (pos < s.size()) {
        frac = (frac << 1) | static_cast<std::uint64_t>(s[pos++] - '0');
        ++frac_bits;
    }
    out.mantissa = (std::uint64_t{1} << frac_bits) | frac;
    out.exp2 = 4 * k + e - frac_bits;
    return out;
}

bool is_special(std::uint64_t bits, int width)
{
    return bits == 0 || bits == (std::uint64_t{1} << (width - 1));
}

// Sign of num/den - m*2^e for num, den > 0.
int compare(const BigInt& num, const BigInt& den, std::uint64_t m, int e)
{
    BigInt lhs = num;
    BigInt rhs = den * m;
    if (e >= 0) {
        rhs <<= e;
    } else {
        lhs <<= -e;
    }
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

PositWord round_positive(const BigInt& num, const BigInt& den, int width)
{
    const std::uint64_t maxpos = (std::uint64_t{1} << (width - 1)) - 1;
    auto cmp_pattern = [&](u128 p, int w) {
        const Dyadic v = reference_decode(p, w);
        return compare(num, den, v.mantissa, v.exp2);
    };

    if (cmp_pattern(1, width) <= 0) {
        return PositWord::minpos(width);
    }
    if (cmp_pattern(maxpos, width) >= 0) {
        return PositWord::maxpos(width);
    }
    // Invariant: value(lo) < a < value(hi) unless an exact hit is found.
    std::uint64_t lo = 1;
    std::uint64_t hi = maxpos;
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        const int c = cmp_pattern(mid, width);
        if (c == 0) {
            return PositWord{mid, width};
        }
        (c > 0 ? lo : hi) = mid;
    }
    // Midpoint: the (n+1)-bit posit between lo and hi.
    const int c = cmp_pattern((static_cast<u128>(lo) << 1) | 1, width + 1);
    if (c < 0) {
        return PositWord{lo, width};
    }
    if (c > 0) {
        return PositWord{hi, width};
    }
    return PositWord{(lo & 1) == 0 ? lo : hi, width};
}

}  // namespace

ExactRational exact_value(PositWord word)
{
    if (is_special(word.bits(), word.width())) {
        throw PositError("exact value requested for zero or NaR");
    }
    const Dyadic v = reference_decode(word.bits(), word.width());
    ExactRational r{BigInt(v.mantissa)};
    if (v.exp2 >= 0) {
        r *= ExactRational{BigInt(1) << v.exp2};
    } else {
        r /= ExactRational{BigInt(1) << -v.exp2};
    }
    return v.negative ? ExactRational{-r} : r;
}

ExactRational exact_value(const DecodedPosit& decoded)
{
    if (!decoded.is_normal()) {
        throw PositError("exact value requested for zero or NaR");
    }
    // (-1)^s * 2^(4k+e) * (1 + f / 2^F)
    BigInt num = (BigInt(1) << decoded.fraction_bits) + BigInt(decoded.fraction);
    const int e2 = decoded.scale() - decoded.fraction_bits;
    ExactRational r{num};
    if (e2 >= 0) {
        r *= ExactRational{BigInt(1) << e2};
    } else {
        r /= ExactRational{BigInt(1) << -e2};
    }
    return decoded.sign ? ExactRational{-r} : r;
}

PositWord round_ratio(const BigInt& num, const BigInt& den, int width)
{
    if (den == 0) {
        throw PositError("zero denominator");
    }
    if (num == 0) {
        return PositWord::zero(width);
    }
    const bool negative = (num < 0) != (den < 0);
    const PositWord mag = round_positive(abs(num), abs(den), width);
    return negative ? mag.negated() : mag;
}

PositWord round_to_posit(const ExactRational& value, int width)
{
    return round_ratio(numerator(value), denominator(value), width);
}

PositWord divide(PositWord dividend, PositWord divisor)
{
    const int n = dividend.width();
    if (divisor.width() != n) {
        throw PositError("operand widths differ");
    }
    if (divisor.is_zero() || divisor.is_nar() || dividend.is_nar()) {
        return PositWord::nar(n);
    }
    if (dividend.is_zero()) {
        return PositWord::zero(n);
    }
    const Dyadic x = reference_decode(dividend.bits(), n);
    const Dyadic d = reference_decode(divisor.bits(), n);
    // (mx 2^ex) / (md 2^ed)
    BigInt num = x.mantissa;
    BigInt den = d.mantissa;
    const int shift = x.exp2 - d.exp2;
    if (shift >= 0) {
        num <<= shift;
    } else {
        den <<= -shift;
    }
    const PositWord mag = round_positive(num, den, n);
    return x.negative != d.negative ? mag.negated() : mag;
}

}  // namespace posdiv::oracle
