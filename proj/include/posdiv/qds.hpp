#pragma once

// Quotient-digit selection for the four recurrence flavours, and the
// radix-4 divisor-dependent selection table with its containment check.
//
// All selection functions work in the fractional convention of the
// recurrence: significands x, d in [1/2, 1), residual |w| <= rho*d < 1.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace posdiv {

/// Truncated shifted residual: value = raw / 2^frac_bits.
struct Estimate {
    int raw = 0;
    int frac_bits = 0;

    std::string to_string() const;
};

class SelectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Radix 2, conventional residual: compares against +-1/2 only.
int select_r2_nonredundant(Estimate y_hat);

/// Radix 2, carry-save residual, estimate with one fraction bit.
/// Valid estimates lie in [-5/2, 3/2].
int select_r2_carrysave(Estimate y_hat);

/// Radix 4, a = 2, prescaled divisor in [1 - 1/64, 1 + 1/8].
/// Valid estimates lie in [-13/4, 3] outside the inter-range gaps.
int select_r4_scaled(Estimate y_hat);

inline constexpr int kR4DivisorRows = 16;       // divisor intervals of width 1/32 on [1/2, 1)
inline constexpr int kR4EstimateFracBits = 4;   // 3 integer + 4 fraction bits
inline constexpr int kR4EstimateCells = 128;    // raw estimates -64 .. 63
inline constexpr int kR4EstimateMin = -64;

/// Radix-4 (a = 2) selection constants m_k(d_hat), k in {-1, 0, 1, 2}, in
/// units of 1/16: digit k is chosen when m_k <= y_hat < m_{k+1}.
struct SelectionTable {
    std::array<std::array<int, 4>, kR4DivisorRows> bounds{};

    int select(int row, int y_hat_raw) const;

    /// Plain-text rendering: threshold block then the full digit matrix.
    std::string serialize() const;

    friend bool operator==(const SelectionTable&, const SelectionTable&) = default;
};

/// Divisor row from the top four fraction bits of the divisor significand.
int divisor_row(std::uint64_t significand, int significand_frac_bits);

/// Radix 4, unscaled: divisor-dependent selection through the frozen table.
int select_r4_table(Estimate y_hat, int divisor_row);

/// The frozen table compiled into the library.
const SelectionTable& r4_table();

/// Derives the table from the containment conditions. Throws
/// SelectionError naming the cell if some reachable cell admits no digit.
SelectionTable build_r4_table();

struct ContainmentReport {
    bool ok = true;
    int cells_checked = 0;
    int reachable_cells = 0;
    std::string first_failure;
};

/// Checks every (divisor interval x estimate cell) against
/// |y - k d| <= 2d/3 for all reachable (d, y) in the cell, with the
/// worst-case carry-save truncation error of two estimate ulps.
ContainmentReport verify_r4_table(const SelectionTable& table);

/// 64-bit FNV-1a, used to pin the serialized table.
std::uint64_t fnv1a64(const std::string& text);

}  // namespace posdiv
