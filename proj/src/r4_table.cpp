// Generated by tools/gen_r4_table --cpp. Do not edit by hand.

#include "posdiv/qds.hpp"

namespace posdiv {

const SelectionTable& r4_table()
{
    // m_-1, m_0, m_1, m_2 in units of 1/16 per divisor row
    static const SelectionTable table{{{
        {-13, -5, 4, 12},
        {-14, -5, 4, 13},
        {-15, -6, 5, 14},
        {-15, -6, 5, 14},
        {-16, -6, 5, 15},
        {-17, -7, 6, 16},
        {-18, -7, 6, 17},
        {-19, -7, 6, 18},
        {-20, -8, 7, 19},
        {-20, -8, 7, 19},
        {-21, -8, 7, 20},
        {-22, -9, 8, 21},
        {-23, -9, 8, 22},
        {-24, -9, 8, 23},
        {-25, -10, 9, 24},
        {-25, -10, 9, 24},
    }}};
    return table;
}

int select_r4_table(Estimate y_hat, int row)
{
    if (y_hat.frac_bits != kR4EstimateFracBits) {
        throw SelectionError("radix-4 table selection needs a 4-fraction-bit estimate");
    }
    if (y_hat.raw < kR4EstimateMin || y_hat.raw >= kR4EstimateMin + kR4EstimateCells) {
        throw SelectionError("radix-4 table selection: estimate " + y_hat.to_string() +
                             " outside the 7-bit window");
    }
    return r4_table().select(row, y_hat.raw);
}

}  // namespace posdiv
