#pragma once

// Posit<n, 2> bit patterns: field decoding, exact re-encoding, and
// round-to-nearest-even encoding of normalized results.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace posdiv {

inline constexpr int kExponentBits = 2;
inline constexpr int kMinWidth = 4;
inline constexpr int kMaxWidth = 64;

class PositError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raw n-bit posit pattern. Bits above `width` are always zero.
class PositWord {
public:
    constexpr PositWord() = default;
    PositWord(std::uint64_t bits, int width);

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr int width() const { return width_; }

    /// Pattern read as an n-bit two's-complement integer; posit order
    /// coincides with this integer order.
    std::int64_t as_signed() const;

    bool is_zero() const { return bits_ == 0; }
    bool is_nar() const { return bits_ == (std::uint64_t{1} << (width_ - 1)); }

    static PositWord zero(int width) { return PositWord{0, width}; }
    static PositWord nar(int width);
    static PositWord one(int width);
    static PositWord maxpos(int width);
    static PositWord minpos(int width);

    /// Two's complement (posit negation). NaR and zero map to themselves.
    PositWord negated() const;

    friend constexpr bool operator==(const PositWord&, const PositWord&) = default;

private:
    std::uint64_t bits_ = 0;
    int width_ = 8;
};

enum class PositClass { Zero, NaR, Normal };

/// Fields of a posit after sign removal. For Normal values
/// value = (-1)^sign * 2^(4*regime + exponent) * significand, with the
/// significand held as 1.f using `significand_frac_bits(width)` fraction
/// bits (zero padded).
struct DecodedPosit {
    PositClass cls = PositClass::Zero;
    bool sign = false;
    int regime = 0;
    unsigned exponent = 0;
    std::uint64_t fraction = 0;  // the F fraction bits actually present
    int fraction_bits = 0;       // F
    std::uint64_t significand = 0;
    int width = 0;

    bool is_normal() const { return cls == PositClass::Normal; }
    int scale() const { return 4 * regime + static_cast<int>(exponent); }
};

/// Worst-case fraction width max(n - 5, 0); the significand register holds
/// one integer bit plus this many fraction bits.
constexpr int significand_frac_bits(int width)
{
    return width > 5 ? width - 5 : 0;
}

DecodedPosit decode(PositWord word);

/// Normalized magnitude handed to the encoder: 1.fraction * 2^scale with
/// `fraction_bits` explicit bits, plus a sticky flag for any nonzero bits
/// below them.
struct NormalizedValue {
    bool sign = false;
    int regime = 0;
    unsigned exponent = 0;
    std::uint64_t fraction = 0;
    int fraction_bits = 0;
    bool sticky = false;
};

/// Assembles regime/exponent/fraction, rounds to nearest (ties to even on
/// the bit string), saturates at maxpos/minpos and applies the sign.
PositWord encode_round(const NormalizedValue& value, int width);

/// Exact re-encoding of a decoded Normal posit.
PositWord encode(const DecodedPosit& decoded);

/// Parses "0b..."/"0x..."/decimal, or a bare 0/1 string of exactly `width`
/// characters. Throws PositError naming the offending position.
PositWord parse_posit(std::string_view text, int width);

std::string format_binary(PositWord word);
std::string format_hex(PositWord word);

/// Human-readable value (exact decimal when short, else scientific).
std::string format_value(PositWord word);

}  // namespace posdiv
