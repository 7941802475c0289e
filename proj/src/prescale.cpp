#include "posdiv/prescale.hpp"

#include <stdexcept>

namespace posdiv {

namespace {

// Indexed by the three divisor bits after 0.1: 000 .. 111.
constexpr std::array<PrescaleFactor, 8> kScaleRows{{
    {{1, 1}, 2},  // 2     = 1 + 1/2 + 1/2
    {{2, 1}, 2},  // 1.75  = 1 + 1/4 + 1/2
    {{1, 3}, 2},  // 1.625 = 1 + 1/2 + 1/8
    {{1, 0}, 1},  // 1.5   = 1 + 1/2
    {{2, 3}, 2},  // 1.375 = 1 + 1/4 + 1/8
    {{2, 0}, 1},  // 1.25  = 1 + 1/4
    {{3, 0}, 1},  // 1.125 = 1 + 1/8
    {{3, 0}, 1},  // 1.125 = 1 + 1/8
}};

}  // namespace

int PrescaleFactor::eighths() const
{
    int m = 8;
    for (int i = 0; i < components; ++i) {
        m += 8 >> shifts[static_cast<std::size_t>(i)];
    }
    return m;
}

std::string PrescaleFactor::to_string() const
{
    std::string s = to_decimal(eighths(), 3) + " = 1";
    for (int i = 0; i < components; ++i) {
        s += " + 1/" + std::to_string(1 << shifts[static_cast<std::size_t>(i)]);
    }
    return s;
}

PrescaleFactor pick_scale(unsigned divisor_bits3)
{
    if (divisor_bits3 > 7) {
        throw std::invalid_argument("prescale selection takes three divisor bits");
    }
    return kScaleRows[divisor_bits3];
}

i128 apply_scale(i128 v_raw, const PrescaleFactor& m)
{
    const i128 widened = v_raw << kPrescaleGuardBits;
    i128 acc = widened;
    for (int i = 0; i < m.components; ++i) {
        acc += widened >> m.shifts[static_cast<std::size_t>(i)];
    }
    return acc;
}

}  // namespace posdiv
