#include "posdiv/posit.hpp"

#include <cmath>
#include <cstdio>

#include "posdiv/bits.hpp"

namespace posdiv {

namespace {

std::uint64_t width_mask(int width)
{
    return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

void check_width(int width)
{
    if (width < kMinWidth || width > kMaxWidth) {
        throw PositError("posit width must be in [" + std::to_string(kMinWidth) + ", " +
                         std::to_string(kMaxWidth) + "], got " + std::to_string(width));
    }
}

}  // namespace

PositWord::PositWord(std::uint64_t bits, int width) : bits_(bits), width_(width)
{
    check_width(width);
    if ((bits & ~width_mask(width)) != 0) {
        throw PositError("pattern does not fit in " + std::to_string(width) + " bits");
    }
}

std::int64_t PositWord::as_signed() const
{
    if (width_ == 64) {
        return static_cast<std::int64_t>(bits_);
    }
    const std::uint64_t sign = std::uint64_t{1} << (width_ - 1);
    return static_cast<std::int64_t>(bits_ ^ sign) - static_cast<std::int64_t>(sign);
}

PositWord PositWord::nar(int width)
{
    check_width(width);
    return PositWord{std::uint64_t{1} << (width - 1), width};
}

PositWord PositWord::one(int width)
{
    check_width(width);
    return PositWord{std::uint64_t{1} << (width - 2), width};
}

PositWord PositWord::maxpos(int width)
{
    check_width(width);
    return PositWord{(std::uint64_t{1} << (width - 1)) - 1, width};
}

PositWord PositWord::minpos(int width)
{
    return PositWord{1, width};
}

PositWord PositWord::negated() const
{
    return PositWord{(~bits_ + 1) & width_mask(width_), width_};
}

DecodedPosit decode(PositWord word)
{
    const int n = word.width();
    DecodedPosit out;
    out.width = n;
    if (word.is_zero()) {
        out.cls = PositClass::Zero;
        return out;
    }
    if (word.is_nar()) {
        out.cls = PositClass::NaR;
        return out;
    }
    out.cls = PositClass::Normal;
    out.sign = ((word.bits() >> (n - 1)) & 1) != 0;
    const std::uint64_t mag = out.sign ? word.negated().bits() : word.bits();

    // Regime: run of identical bits starting just below the sign.
    const int top = n - 2;
    const bool r0 = ((mag >> top) & 1) != 0;
    int run = 0;
    while (run <= top && (((mag >> (top - run)) & 1) != 0) == r0) {
        ++run;
    }
    out.regime = r0 ? run - 1 : -run;
    const int consumed = std::min(run + 1, n - 1);
    const int remaining = n - 1 - consumed;

    const int exp_present = std::min(remaining, kExponentBits);
    const std::uint64_t exp_field =
        exp_present > 0 ? ((mag >> (remaining - exp_present)) & width_mask(exp_present)) : 0;
    // Missing exponent bits read as zero.
    out.exponent = static_cast<unsigned>(exp_field << (kExponentBits - exp_present));

    out.fraction_bits = std::max(remaining - kExponentBits, 0);
    out.fraction = out.fraction_bits > 0 ? (mag & width_mask(out.fraction_bits)) : 0;

    const int sfb = significand_frac_bits(n);
    out.significand = (std::uint64_t{1} << sfb) | (out.fraction << (sfb - out.fraction_bits));
    return out;
}

PositWord encode_round(const NormalizedValue& value, int width)
{
    check_width(width);
    const int n = width;
    const int body_bits = n - 1;
    const int k = value.regime;

    auto apply_sign = [&](PositWord w) { return value.sign ? w.negated() : w; };

    if (k >= n - 2) {
        return apply_sign(PositWord::maxpos(n));
    }
    if (k < -(n - 2)) {
        return apply_sign(PositWord::minpos(n));
    }

    std::uint64_t frac = value.fraction;
    int fb = value.fraction_bits;
    bool sticky = value.sticky;
    // Anything below 62 fraction bits lies beyond the round position for
    // every width <= 64.
    if (fb > 62) {
        const int drop = fb - 62;
        sticky = sticky || (frac & width_mask(drop)) != 0;
        frac >>= drop;
        fb = 62;
    }

    const int regime_len = k >= 0 ? k + 2 : -k + 1;
    const u128 regime_field = k >= 0 ? (low_mask(k + 1) << 1) : u128{1};
    const u128 body = (regime_field << (kExponentBits + fb)) |
                      (static_cast<u128>(value.exponent & 3u) << fb) | static_cast<u128>(frac);
    const int body_len = regime_len + kExponentBits + fb;

    u128 kept;
    bool round_bit = false;
    bool rest = sticky;
    if (body_len <= body_bits) {
        kept = body << (body_bits - body_len);
    } else {
        const int shift = body_len - body_bits;
        kept = body >> shift;
        round_bit = ((body >> (shift - 1)) & 1) != 0;
        rest = rest || (body & low_mask(shift - 1)) != 0;
    }
    if (round_bit && (rest || (kept & 1) != 0)) {
        ++kept;
    }
    const u128 maxpos = low_mask(body_bits);
    if (kept > maxpos) {
        kept = maxpos;
    }
    if (kept == 0) {
        kept = 1;
    }
    return apply_sign(PositWord{static_cast<std::uint64_t>(kept), n});
}

PositWord encode(const DecodedPosit& decoded)
{
    switch (decoded.cls) {
    case PositClass::Zero:
        return PositWord::zero(decoded.width);
    case PositClass::NaR:
        return PositWord::nar(decoded.width);
    case PositClass::Normal:
        break;
    }
    return encode_round(NormalizedValue{decoded.sign, decoded.regime, decoded.exponent,
                                        decoded.fraction, decoded.fraction_bits, false},
                        decoded.width);
}

PositWord parse_posit(std::string_view text, int width)
{
    check_width(width);
    if (text.empty()) {
        throw PositError("empty posit pattern");
    }
    auto fail = [&](std::size_t pos, const std::string& what) -> PositError {
        return PositError("invalid posit pattern '" + std::string(text) + "' at position " +
                          std::to_string(pos) + ": " + what);
    };

    int base = 10;
    std::size_t start = 0;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'b' || text[1] == 'B')) {
        base = 2;
        start = 2;
    } else if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        base = 16;
        start = 2;
    } else if (text.size() == static_cast<std::size_t>(width) &&
               text.find_first_not_of("01") == std::string_view::npos) {
        base = 2;
    }

    u128 acc = 0;
    for (std::size_t i = start; i < text.size(); ++i) {
        const char c = text[i];
        int digit;
        if (c >= '0' && c <= '9') {
            digit = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            digit = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
            digit = c - 'A' + 10;
        } else if (c == '_' || c == '\'') {
            continue;
        } else {
            throw fail(i, "unexpected character");
        }
        if (digit >= base) {
            throw fail(i, "digit out of range for base " + std::to_string(base));
        }
        acc = acc * static_cast<unsigned>(base) + static_cast<unsigned>(digit);
        if (acc > low_mask(width)) {
            throw fail(i, "value does not fit in " + std::to_string(width) + " bits");
        }
    }
    return PositWord{static_cast<std::uint64_t>(acc), width};
}

std::string format_binary(PositWord word)
{
    return to_binary(word.bits(), word.width());
}

std::string format_hex(PositWord word)
{
    return "0x" + to_hex(word.bits(), word.width());
}

std::string format_value(PositWord word)
{
    const DecodedPosit d = decode(word);
    if (d.cls == PositClass::Zero) {
        return "0";
    }
    if (d.cls == PositClass::NaR) {
        return "NaR";
    }
    const int sfb = significand_frac_bits(d.width);
    const long double sig = std::ldexp(static_cast<long double>(d.significand), -sfb);
    const long double v = std::ldexp(sig, d.scale()) * (d.sign ? -1.0L : 1.0L);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.21Lg", v);
    return buf;
}

}  // namespace posdiv
