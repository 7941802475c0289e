#pragma once

#include <cstdint>
#include <string>

namespace posdiv {

// Wide two's-complement scratch type for datapath words. Every register in
// the divider fits in 128 bits for n <= 64.
__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

constexpr u128 low_mask(int width)
{
    return width >= 128 ? ~u128{0} : ((u128{1} << width) - 1);
}

/// Reinterprets the low `width` bits of `raw` as a two's-complement value.
constexpr i128 wrap_signed(i128 raw, int width)
{
    const u128 m = low_mask(width);
    u128 u = static_cast<u128>(raw) & m;
    if (width < 128 && ((u >> (width - 1)) & 1)) {
        u |= ~m;
    }
    return static_cast<i128>(u);
}

/// Arithmetic right shift (floor division by 2^s).
constexpr i128 floor_shift(i128 v, int s)
{
    return s <= 0 ? v : (v >> s);
}

constexpr int bit_length(u128 v)
{
    int n = 0;
    while (v != 0) {
        v >>= 1;
        ++n;
    }
    return n;
}

/// MSB-first binary string of the low `width` bits.
std::string to_binary(u128 bits, int width);

/// Lower-case hex string of the low `width` bits, zero padded to whole
/// nibbles.
std::string to_hex(u128 bits, int width);

/// Exact decimal rendering of raw / 2^frac_bits.
std::string to_decimal(i128 raw, int frac_bits);

}  // namespace posdiv
