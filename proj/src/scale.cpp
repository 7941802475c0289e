#include "posdiv/scale.hpp"

#include <stdexcept>

namespace posdiv {

ScaleFactor combine(int regime, unsigned exponent)
{
    if (exponent > 3) {
        throw std::invalid_argument("posit exponent must be a 2-bit value");
    }
    return ScaleFactor{4 * regime + static_cast<int>(exponent)};
}

RegimeExponent subtract_split(ScaleFactor dividend, ScaleFactor divisor, bool normalize_decrement)
{
    const ScaleFactor t{dividend.value - divisor.value - (normalize_decrement ? 1 : 0)};
    return RegimeExponent{t.regime(), t.exponent()};
}

}  // namespace posdiv
