#pragma once

#include <stdexcept>

namespace posdiv {

/// Symmetric quotient-digit set [-a, a] in radix r with redundancy factor
/// rho = a / (r - 1), restricted to 1/2 < rho <= 1.
class DigitSet {
public:
    DigitSet(int radix, int max_digit) : radix_(radix), max_digit_(max_digit)
    {
        if (radix != 2 && radix != 4) {
            throw std::invalid_argument("radix must be 2 or 4");
        }
        // 1/2 < a/(r-1) <= 1
        if (!(2 * max_digit > radix - 1 && max_digit <= radix - 1)) {
            throw std::invalid_argument("redundancy factor a/(r-1) must lie in (1/2, 1]");
        }
    }

    static DigitSet radix2() { return DigitSet{2, 1}; }
    static DigitSet radix4() { return DigitSet{4, 2}; }

    int radix() const { return radix_; }
    int max_digit() const { return max_digit_; }
    int log2_radix() const { return radix_ == 2 ? 1 : 2; }

    // rho = rho_num / rho_den
    int rho_num() const { return max_digit_; }
    int rho_den() const { return radix_ - 1; }
    bool maximally_redundant() const { return max_digit_ == radix_ - 1; }

    /// Right shift applied to the dividend at initialization: w(0) = x / 2^s.
    int init_shift() const { return maximally_redundant() ? 1 : 2; }

private:
    int radix_;
    int max_digit_;
};

}  // namespace posdiv
