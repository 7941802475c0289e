#pragma once

// Exact reference for posit division: rational arithmetic on the decoded
// values and nearest rounding by bisection over the posit patterns. Shares no
// code with the digit-recurrence datapath (including the field decoder).

#include <boost/multiprecision/cpp_int.hpp>

#include "posdiv/posit.hpp"

namespace posdiv::oracle {

using BigInt = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

/// Exact value of a Normal posit; throws PositError for Zero/NaR.
ExactRational exact_value(PositWord word);
ExactRational exact_value(const DecodedPosit& decoded);

/// Nearest n-bit posit. The rounding midpoint between adjacent posits u < w
/// is the (n+1)-bit posit between them; ties go to the even pattern.
/// Magnitudes beyond maxpos/minpos clamp; zero maps to Zero.
PositWord round_to_posit(const ExactRational& value, int width);

/// Same, for num/den given unreduced (den != 0).
PositWord round_ratio(const BigInt& num, const BigInt& den, int width);

/// Correctly rounded X / D including the Zero/NaR rules.
PositWord divide(PositWord dividend, PositWord divisor);

}  // namespace posdiv::oracle
