#pragma once

// Digit-recurrence posit division: decode, special cases, sign and scale
// handling, It recurrence steps, termination (correction, compensation,
// normalization, rounding) and the cycle model.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "posdiv/digit_set.hpp"
#include "posdiv/posit.hpp"
#include "posdiv/residual.hpp"
#include "posdiv/scale.hpp"

namespace posdiv {

enum class Algorithm {
    NRD,           // non-restoring, digits {-1, 1}
    SRT,           // redundant digits, conventional residual
    SRT_CS,        // carry-save residual
    SRT_CS_OF,     // + on-the-fly quotient conversion
    SRT_CS_OF_FR,  // + sign/zero lookahead on the final residual
};

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct DivisionConfig {
    Algorithm algorithm = Algorithm::SRT_CS_OF_FR;
    int radix = 2;
    bool scaled = false;
    int width = 16;

    /// Throws ConfigError for combinations outside the implemented set:
    /// NRD/SRT are radix 2 only, scaling needs radix 4, width in [5, 64].
    void validate() const;

    DigitSet digit_set() const { return radix == 4 ? DigitSet::radix4() : DigitSet::radix2(); }
    bool carry_save() const;
    bool on_the_fly() const;
    bool fast_remainder() const;

    /// e.g. "srt-cs-of/r4/scaled"
    std::string name() const;

    /// The eleven implemented (algorithm, radix, scaling) combinations.
    static std::vector<DivisionConfig> all(int width);

    friend bool operator==(const DivisionConfig&, const DivisionConfig&) = default;
};

struct IterationCount {
    int result_bits = 0;  // h = n - 1 - floor(rho)
    int iterations = 0;   // It = ceil(h / log2 r)
};

IterationCount iteration_count(int width, const DigitSet& digits);

/// It + 3, plus one cycle for operand prescaling.
int latency(const DivisionConfig& cfg);

struct DivisionFlags {
    bool special = false;  // zero/NaR bypass, no recurrence ran
    bool remainder_negative = false;
    bool remainder_zero = false;
    bool normalized = false;  // quotient was in [1/2, 1) and got shifted
};

/// Invariants evaluated by divide_checked and trace_division.
struct DivisionChecks {
    int rows = 0;                   // recurrence steps executed
    bool lookahead_agrees = true;   // lookahead flags equal full assimilation
    bool reconstruction_ok = true;  // x/p == d q(It) + w(It) r^-It
};

struct DivisionResult {
    PositWord quotient;
    DivisionFlags flags;
    int cycles = 0;
    std::optional<DivisionChecks> checks;
};

class DivisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

DivisionResult divide(PositWord dividend, PositWord divisor, const DivisionConfig& cfg);

/// divide plus the reconstruction and lookahead cross-checks. The residual
/// bound is enforced on every step in both modes.
DivisionResult divide_checked(PositWord dividend, PositWord divisor, const DivisionConfig& cfg);

struct TraceRow {
    int iter = 0;
    std::string y_hat;
    int digit = 0;
    std::string ws_hex;
    std::string wc_hex;
    std::string q_bits;
    std::string qd_bits;  // empty without on-the-fly conversion
};

struct DivisionTrace {
    DivisionConfig cfg;
    PositWord dividend;
    PositWord divisor;
    IterationCount count;
    int cycles = 0;
    ResidualFormat residual_format;
    std::string prescale;          // empty unless scaled
    RegimeExponent pre_normalize;  // (k_Q, e_Q) before the normalization shift
    std::vector<TraceRow> rows;

    DivisionFlags flags;
    std::string pre_round_quotient;  // p*q after correction, MSB is the integer bit
    int pre_round_frac_bits = 0;
    std::string remainder;           // p * corrected final residual
    DivisionChecks checks;
    PositWord quotient;

    /// JSON-lines: header record, one record per iteration, footer record.
    std::string to_jsonl() const;
};

DivisionTrace trace_division(PositWord dividend, PositWord divisor, const DivisionConfig& cfg);

}  // namespace posdiv
