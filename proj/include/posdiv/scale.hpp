#pragma once

#include <compare>

namespace posdiv {

/// Combined scale 4k + e of a posit (regime k, 2-bit exponent e).
struct ScaleFactor {
    int value = 0;

    constexpr int regime() const { return value >> 2; }  // floor(value / 4)
    constexpr unsigned exponent() const { return static_cast<unsigned>(value & 3); }

    friend constexpr auto operator<=>(const ScaleFactor&, const ScaleFactor&) = default;
};

ScaleFactor combine(int regime, unsigned exponent);

struct RegimeExponent {
    int regime = 0;
    unsigned exponent = 0;

    friend constexpr bool operator==(const RegimeExponent&, const RegimeExponent&) = default;
};

/// T = sf_x - sf_d - normalize_decrement, split as k = floor(T/4),
/// e = T mod 4 (the two LSBs of T in two's complement).
RegimeExponent subtract_split(ScaleFactor dividend, ScaleFactor divisor, bool normalize_decrement);

}  // namespace posdiv
