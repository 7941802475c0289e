#pragma once

// On-the-fly conversion of signed quotient digits into conventional binary.
// Q holds the converted prefix, QD = Q - r^-i its decremented form; both are
// updated by concatenation only.

#include <string>

#include "posdiv/bits.hpp"

namespace posdiv {

struct OtfState {
    u128 q = 0;   // value = q / r^iterations
    u128 qd = 0;
    int iterations = 0;
    int radix = 2;

    int log2_radix() const { return radix == 4 ? 2 : 1; }
    int bit_count() const { return iterations * log2_radix(); }
};

OtfState otf_init(int radix);

OtfState otf_append(const OtfState& state, int digit);

/// QD when the final remainder is negative, else Q. This selection is the
/// whole correction step: no subtraction happens.
u128 otf_finalize(const OtfState& state, bool remainder_negative);

std::string otf_q_bits(const OtfState& state);
std::string otf_qd_bits(const OtfState& state);

}  // namespace posdiv
