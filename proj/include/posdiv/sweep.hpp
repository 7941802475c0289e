#pragma once

// Oracle sweeps over operand pairs: exhaustive for small widths, seeded
// random with edge-case injection otherwise. Work is split across threads and
// merged in a fixed order, so reports do not depend on the worker count.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "posdiv/divider.hpp"

namespace posdiv {

/// Widest width accepted for an exhaustive sweep (2^(2n) pairs).
inline constexpr int kMaxExhaustiveWidth = 12;

struct SweepOptions {
    int width = 8;
    bool exhaustive = false;
    std::uint64_t random_count = 0;  // random pairs on top of the edge cross product
    std::uint64_t seed = 1;
    std::vector<DivisionConfig> configs;
    unsigned workers = 0;          // 0: POSDIV_WORKERS, else hardware concurrency
    bool deep_checks = false;      // reconstruction and lookahead per division
    std::size_t max_reported = 16;
};

struct SweepFailure {
    std::string kind;  // mismatch, bound, reconstruction, lookahead, rows
    std::string config;
    PositWord dividend;
    PositWord divisor;
    PositWord expected;
    PositWord got;
    std::string detail;
};

struct VariantStats {
    DivisionConfig cfg;
    std::uint64_t cases = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t violations = 0;
    int iterations = 0;
    int cycles = 0;
};

struct SweepReport {
    int width = 0;
    std::uint64_t pairs = 0;
    std::uint64_t divisions = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t violations = 0;
    std::uint64_t disagreements = 0;  // pairs where configurations differ among themselves
    std::vector<VariantStats> variants;
    std::vector<SweepFailure> failures;  // first max_reported, sorted

    bool passed() const { return mismatches == 0 && violations == 0 && disagreements == 0; }
    std::string to_table() const;
    std::string to_jsonl() const;
};

/// Zero, NaR, +-1 and neighbours, +-maxpos, +-minpos and their neighbours,
/// all-ones and lowest-bit fractions around 1 and 1/2. Sorted, unique.
std::vector<PositWord> edge_operands(int width);

/// Pair number `index` of the random stream: edge cross product first, then
/// uniform patterns with each operand replaced by an edge value 1 time in 8.
std::pair<PositWord, PositWord> random_pair(int width, std::uint64_t seed, std::uint64_t index,
                                            const std::vector<PositWord>& edges);

/// POSDIV_WORKERS if set and positive, else hardware concurrency (at least 1).
unsigned resolve_workers(unsigned requested);

/// Throws ConfigError for invalid widths/modes.
SweepReport run_sweep(const SweepOptions& options);

}  // namespace posdiv
