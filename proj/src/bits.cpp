#include "posdiv/bits.hpp"

#include <algorithm>

namespace posdiv {

std::string to_binary(u128 bits, int width)
{
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
        if ((bits >> (width - 1 - i)) & 1) {
            s[static_cast<std::size_t>(i)] = '1';
        }
    }
    return s;
}

std::string to_hex(u128 bits, int width)
{
    static constexpr char digits[] = "0123456789abcdef";
    const int nibbles = std::max(1, (width + 3) / 4);
    bits &= low_mask(width);
    std::string s(static_cast<std::size_t>(nibbles), '0');
    for (int i = 0; i < nibbles; ++i) {
        s[static_cast<std::size_t>(nibbles - 1 - i)] = digits[static_cast<int>((bits >> (4 * i)) & 0xf)];
    }
    return s;
}

std::string to_decimal(i128 raw, int frac_bits)
{
    const bool neg = raw < 0;
    u128 mag = neg ? static_cast<u128>(-raw) : static_cast<u128>(raw);
    const u128 int_part = frac_bits > 0 ? (mag >> frac_bits) : mag;
    u128 frac = frac_bits > 0 ? (mag & low_mask(frac_bits)) : 0;

    std::string ip;
    u128 t = int_part;
    do {
        ip.insert(ip.begin(), static_cast<char>('0' + static_cast<int>(t % 10)));
        t /= 10;
    } while (t != 0);

    std::string out = neg ? "-" + ip : ip;
    if (frac == 0) {
        return out;
    }
    // One exact digit per step; dyadic fractions terminate. frac_bits <= 120
    // keeps frac * 10 inside 128 bits.
    const int fb = frac_bits;
    out.push_back('.');
    while (frac != 0) {
        frac *= 10;
        out.push_back(static_cast<char>('0' + static_cast<int>(frac >> fb)));
        frac &= low_mask(fb);
    }
    return out;
}

}  // namespace posdiv
