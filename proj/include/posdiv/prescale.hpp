#pragma once

// Operand prescaling for the radix-4 scaled divider: M ~ 1/d chosen from
// three divisor bits and applied by shift-and-add.

#include <array>
#include <string>

#include "posdiv/bits.hpp"

namespace posdiv {

inline constexpr int kPrescaleGuardBits = 3;

/// M = 1 + sum of 2^-shift over one or two components.
struct PrescaleFactor {
    std::array<int, 2> shifts{};  // 0 marks an unused slot
    int components = 0;

    /// M in units of 1/8.
    int eighths() const;
    std::string to_string() const;
};

/// Selects M from the three bits following the leading 1 of d in [1/2, 1)
/// (equivalently the top three fraction bits of the posit significand).
PrescaleFactor pick_scale(unsigned divisor_bits3);

/// Exact v * M. The result carries kPrescaleGuardBits more fraction bits
/// than the input.
i128 apply_scale(i128 v_raw, const PrescaleFactor& m);

}  // namespace posdiv
