#pragma once

// Partial-remainder datapath: fixed-point words with 3 integer bits
// (two's complement) and a configurable number of fraction bits, held either
// as one conventional word or as a carry-save (sum, carry) pair.

#include <stdexcept>
#include <string>

#include "posdiv/bits.hpp"
#include "posdiv/digit_set.hpp"

namespace posdiv {

inline constexpr int kResidualIntBits = 3;

struct ResidualFormat {
    int frac_bits = 0;

    int width() const { return frac_bits + kResidualIntBits; }
};

class ResidualBoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Residual {
public:
    static Residual non_redundant(i128 value, ResidualFormat fmt);
    static Residual carry_save(i128 sum, i128 carry, ResidualFormat fmt);

    bool redundant() const { return redundant_; }
    const ResidualFormat& format() const { return fmt_; }

    /// For a non-redundant residual the carry word is zero.
    i128 sum_word() const { return sum_; }
    i128 carry_word() const { return carry_; }

    /// Exact value (raw, scaled by 2^frac_bits) of sum + carry in the W-bit
    /// window. This is a carry-propagate addition; the recurrence itself
    /// never calls it on carry-save residuals.
    i128 value() const;

private:
    Residual(i128 sum, i128 carry, ResidualFormat fmt, bool redundant)
        : sum_(sum), carry_(carry), fmt_(fmt), redundant_(redundant)
    {
    }

    i128 sum_;
    i128 carry_;
    ResidualFormat fmt_;
    bool redundant_;
};

/// w(0) = x / 2 (rho = 1) or x / 4 (rho < 1). `x_raw` carries
/// `x_frac_bits` fraction bits; the format must have room for the shift.
Residual init_residual(i128 x_raw, int x_frac_bits, const DigitSet& digits, ResidualFormat fmt,
                       bool carry_save);

/// r w(i) - q d in the W-bit window with no bound check: a plain
/// subtraction, or one 3:2 carry-save row for carry-save residuals.
Residual recurrence_step(const Residual& w, i128 d_raw, int digit, int radix);

/// w(i+1) = r w(i) - q d. `d_raw` uses the residual's fraction bits.
/// Carry-save residuals go through a single 3:2 carry-save row.
/// Throws ResidualBoundError if |w(i+1)| > rho d.
Residual step(const Residual& w, i128 d_raw, int digit, const DigitSet& digits);

/// True iff |w| <= rho * d.
bool within_bound(i128 w_raw, i128 d_raw, const DigitSet& digits);

/// Truncated shifted residual r*w(i) with `est_frac_bits` fraction bits and
/// three integer bits. Each carry-save word is truncated toward -inf before
/// the short addition. Returns the estimate in units of 2^-est_frac_bits.
int shifted_estimate(const Residual& w, int radix, int est_frac_bits);

struct SignZero {
    bool negative = false;
    bool zero = false;

    friend constexpr bool operator==(const SignZero&, const SignZero&) = default;
};

/// Sign and zero of ws + wc over a `width`-bit window without a
/// carry-propagate adder: the sign from a parallel-prefix carry network into
/// the MSB, the zero flag from the per-bit test (ws ^ wc) == (ws | wc) << 1.
SignZero sign_zero_lookahead(i128 sum, i128 carry, int width);

/// Zero test of ws + wc + addend: one 3:2 row, then the same per-bit test.
/// Used for the corrected remainder w + d, which is zero when w = -d.
bool zero_lookahead3(i128 sum, i128 carry, i128 addend, int width);

std::string residual_hex(i128 word, ResidualFormat fmt);

}  // namespace posdiv
