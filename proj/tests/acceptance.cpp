// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "posdiv/divider.hpp"
#include "posdiv/otf.hpp"
#include "posdiv/prescale.hpp"
#include "posdiv/qds.hpp"
#include "posdiv/residual.hpp"
#include "posdiv/sweep.hpp"

namespace {

using namespace posdiv;
using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr double kWorkedExamplesMaxSeconds = 1.0;
constexpr double kCycleModelMaxSeconds = 1.0;
constexpr std::uint64_t kRandomPairsPerWidth = 1'000'000;
constexpr std::uint64_t kRandomSeed = 20261016;
constexpr int kOtfStringsPerRadix = 1'000'000;
constexpr std::uint64_t kLookaheadRandomPairs = 10'000'000;
constexpr std::uint64_t kTableHash = 0xc9fe6905cc0c46c7ULL;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int g_failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body)
{
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("[%s] %d. %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) {
        ++g_failures;
    }
}

std::string u(std::uint64_t v)
{
    return std::to_string(v);
}

Outcome worked_examples()
{
    const auto t0 = Clock::now();
    const PositWord x = parse_posit("0011010111", 10);
    struct Case {
        const char* d;
        const char* q;
        RegimeExponent ke;
    };
    const Case cases[] = {{"0001001100", "0110011111", {1, 2}}, {"0000100110", "0111010000", {2, 2}}};
    int checked = 0;
    for (const Case& c : cases) {
        for (const DivisionConfig& cfg : DivisionConfig::all(10)) {
            const DivisionTrace t = trace_division(x, parse_posit(c.d, 10), cfg);
            if (format_binary(t.quotient) != c.q) {
                return {false, cfg.name() + " gives " + format_binary(t.quotient) + " for D=" + c.d};
            }
            if (!(t.pre_normalize == c.ke)) {
                return {false, cfg.name() + " pre-normalization k/e differ for D=" + c.d};
            }
            if (t.pre_round_quotient.substr(0, 8) != "01111101" || !t.flags.normalized || t.flags.remainder_zero) {
                return {false, cfg.name() + " intermediate quotient " + t.pre_round_quotient};
            }
            ++checked;
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool fast = secs < kWorkedExamplesMaxSeconds;
    return {fast, u(checked) + " divisions bit-exact, kQ/eQ = (1,2) and (2,2)" + (fast ? "" : ", too slow")};
}

Outcome cycle_model()
{
    const auto t0 = Clock::now();
    struct Row {
        int n, it2, lat2, it4, lat4;
    };
    const Row rows[] = {{16, 14, 17, 8, 11}, {32, 30, 33, 16, 19}, {64, 62, 65, 32, 35}};
    std::string got;
    for (const Row& r : rows) {
        for (const DivisionConfig& cfg : DivisionConfig::all(r.n)) {
            const int it = iteration_count(r.n, cfg.digit_set()).iterations;
            const int lat = latency(cfg);
            const int want_it = cfg.radix == 2 ? r.it2 : r.it4;
            const int want_lat = (cfg.radix == 2 ? r.lat2 : r.lat4) + (cfg.scaled ? 1 : 0);
            if (it != want_it || lat != want_lat) {
                return {false, cfg.name() + " n=" + std::to_string(r.n) + " gives " + std::to_string(it) + "/" +
                                   std::to_string(lat)};
            }
        }
        got += " n=" + std::to_string(r.n) + ":" + std::to_string(r.it2) + "/" + std::to_string(r.lat2) + "," +
               std::to_string(r.it4) + "/" + std::to_string(r.lat4);
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return {secs < kCycleModelMaxSeconds, "iterations/latency" + got};
}

SweepReport exhaustive(int n)
{
    SweepOptions o;
    o.width = n;
    o.exhaustive = true;
    o.configs = DivisionConfig::all(n);
    o.deep_checks = true;
    o.max_reported = 4;
    return run_sweep(o);
}

SweepReport randomized(int n)
{
    SweepOptions o;
    o.width = n;
    o.random_count = kRandomPairsPerWidth;
    o.seed = kRandomSeed + static_cast<std::uint64_t>(n);
    o.configs = DivisionConfig::all(n);
    o.deep_checks = true;
    o.max_reported = 4;
    return run_sweep(o);
}

std::string first_failure(const SweepReport& r)
{
    if (r.failures.empty()) {
        return "";
    }
    const SweepFailure& f = r.failures.front();
    return "; first: " + f.kind + " " + f.config + " " + format_binary(f.dividend) + "/" + format_binary(f.divisor);
}

std::uint64_t scaled_mismatches(const SweepReport& r)
{
    std::uint64_t m = 0;
    for (const VariantStats& v : r.variants) {
        if (v.cfg.radix == 4) {
            m += v.mismatches;
        }
    }
    return m;
}

Outcome otf_check()
{
    std::mt19937_64 rng(kRandomSeed);
    std::uint64_t prefixes = 0;
    for (int radix : {2, 4}) {
        const int a = radix == 4 ? 2 : 1;
        const int max_len = radix == 4 ? 31 : 62;
        for (int s = 0; s < kOtfStringsPerRadix; ++s) {
            const int len = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_len));
            const int leading_zeros = radix == 4 ? static_cast<int>(rng() % 3) : 0;
            OtfState st = otf_init(radix);
            i128 sum = 0;
            for (int i = 1; i <= len; ++i) {
                int q;
                if (i <= leading_zeros) {
                    q = 0;
                } else if (i == leading_zeros + 1) {
                    q = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(a));
                } else {
                    q = static_cast<int>(rng() % static_cast<std::uint64_t>(2 * a + 1)) - a;
                }
                st = otf_append(st, q);
                sum = sum * radix + q;
                ++prefixes;
                if (st.q != static_cast<u128>(sum)) {
                    return {false, "Q differs from digit sum, radix " + std::to_string(radix)};
                }
                if (sum > 0 && st.qd != static_cast<u128>(sum - 1)) {
                    return {false, "QD != Q - ulp, radix " + std::to_string(radix)};
                }
            }
            if (sum > 0 && (otf_finalize(st, true) != static_cast<u128>(sum - 1) ||
                            otf_finalize(st, false) != static_cast<u128>(sum))) {
                return {false, "finalize differs from explicit ulp subtraction"};
            }
        }
    }
    return {true, u(2 * static_cast<std::uint64_t>(kOtfStringsPerRadix)) + " strings, " + u(prefixes) +
                      " prefixes exact"};
}

Outcome prescale_range(const SweepReport& e8, const SweepReport& e10, const std::vector<SweepReport>& rnd)
{
    std::uint64_t divisors = 0;
    for (int n : {10, 16, 32}) {
        const int sfb = significand_frac_bits(n);
        const int fb = sfb + 1 + kPrescaleGuardBits;
        const i128 one = i128{1} << fb;
        const i128 lo = one - (one >> 6);
        const i128 hi = one + (one >> 3);
        for (std::uint64_t f = 0; f < (std::uint64_t{1} << sfb); ++f) {
            const i128 sig = static_cast<i128>((std::uint64_t{1} << sfb) | f);
            const i128 md = apply_scale(sig, pick_scale(static_cast<unsigned>(f >> (sfb - 3))));
            ++divisors;
            if (md < lo || md > hi) {
                return {false, "M*d out of range at n=" + std::to_string(n) + " fraction " + u(f)};
            }
        }
    }
    std::uint64_t disagreements = e8.disagreements + e10.disagreements;
    std::uint64_t r4_mismatch = scaled_mismatches(e8) + scaled_mismatches(e10);
    for (const SweepReport& r : rnd) {
        disagreements += r.disagreements;
        r4_mismatch += scaled_mismatches(r);
    }
    return {disagreements == 0 && r4_mismatch == 0,
            u(divisors) + " divisors in [1-1/64, 1+1/8]; scaled/unscaled disagreements " + u(disagreements)};
}

Outcome lookahead()
{
    auto reference = [](u128 a, u128 b, int w) {
        const u128 s = (a + b) & low_mask(w);
        return SignZero{((s >> (w - 1)) & 1) != 0, s == 0};
    };
    for (u128 a = 0; a < 256; ++a) {
        for (u128 b = 0; b < 256; ++b) {
            if (!(sign_zero_lookahead(static_cast<i128>(a), static_cast<i128>(b), 8) == reference(a, b, 8))) {
                return {false, "8-bit mismatch"};
            }
        }
    }
    std::mt19937_64 rng(kRandomSeed);
    for (std::uint64_t i = 0; i < kLookaheadRandomPairs; ++i) {
        const int w = 9 + static_cast<int>(rng() % 60);  // 9 .. 68
        const u128 a = ((static_cast<u128>(rng()) << 64) | rng()) & low_mask(w);
        u128 b = ((static_cast<u128>(rng()) << 64) | rng()) & low_mask(w);
        switch (rng() % 4) {
        case 0:
            b = (~a + 1) & low_mask(w);  // sum zero
            break;
        case 1:
            b = (~a + 1 + (rng() % 3) - 1) & low_mask(w);  // sum near zero
            break;
        default:
            break;
        }
        if (!(sign_zero_lookahead(static_cast<i128>(a), static_cast<i128>(b), w) == reference(a, b, w))) {
            return {false, "mismatch at width " + std::to_string(w)};
        }
    }
    return {true, "65536 8-bit pairs and " + u(kLookaheadRandomPairs) + " random pairs (widths 9..68) exact"};
}

Outcome table_containment()
{
    const ContainmentReport rep = verify_r4_table(r4_table());
    if (!rep.ok) {
        return {false, rep.first_failure};
    }
    if (!(build_r4_table() == r4_table())) {
        return {false, "derived table differs from the frozen table"};
    }
    std::ifstream in(std::string(POSDIV_DATA_DIR) + "/r4_selection_table.txt", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::uint64_t file_hash = fnv1a64(ss.str());
    const std::uint64_t built_hash = fnv1a64(r4_table().serialize());
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d cells (%d reachable) contained; file hash %016llx, pinned %016llx",
                  rep.cells_checked, rep.reachable_cells, static_cast<unsigned long long>(file_hash),
                  static_cast<unsigned long long>(kTableHash));
    return {file_hash == kTableHash && built_hash == kTableHash, buf};
}

}  // namespace

int main()
{
    std::printf("posdiv acceptance suite\n");
    report(1, "worked rounding examples, n=10, all variants", worked_examples);
    report(2, "iteration and latency model, n=16/32/64", cycle_model);

    SweepReport e8;
    SweepReport e10;
    report(3, "exhaustive oracle equivalence, n=8 and n=10, all variants", [&]() -> Outcome {
        e8 = exhaustive(8);
        e10 = exhaustive(10);
        const std::uint64_t mism = e8.mismatches + e10.mismatches;
        return {mism == 0 && e8.pairs == 65536 && e10.pairs == 1048576,
                u(e8.divisions + e10.divisions) + " divisions, " + u(mism) + " mismatches" +
                    first_failure(mism ? (e8.mismatches ? e8 : e10) : e8)};
    });

    std::vector<SweepReport> rnd;
    report(4, "randomized oracle equivalence, n=16/32/64, all variants", [&]() -> Outcome {
        std::uint64_t mism = 0;
        std::uint64_t viol = 0;
        std::uint64_t pairs = 0;
        std::string first;
        for (int n : {16, 32, 64}) {
            rnd.push_back(randomized(n));
            const SweepReport& r = rnd.back();
            mism += r.mismatches;
            viol += r.violations;
            pairs += r.pairs;
            if (first.empty() && !r.passed()) {
                first = first_failure(r);
            }
        }
        return {mism == 0 && viol == 0,
                u(pairs) + " pairs incl. edge cross products, " + u(mism) + " mismatches, " + u(viol) +
                    " invariant violations" + first};
    });

    report(5, "residual bound over the exhaustive runs", [&]() -> Outcome {
        const std::uint64_t v = e8.violations + e10.violations;
        return {v == 0 && e8.divisions > 0,
                u(v) + " bound/reconstruction/lookahead violations in " + u(e8.divisions + e10.divisions) +
                    " checked divisions"};
    });
    report(6, "on-the-fly conversion", otf_check);
    report(7, "prescale range and scaled/unscaled agreement",
           [&] { return prescale_range(e8, e10, rnd); });
    report(8, "sign/zero lookahead vs carry-propagate addition", lookahead);
    report(9, "radix-4 selection table containment and pinned hash", table_containment);

    std::printf("%s: %d of 9 criteria failed\n", g_failures == 0 ? "PASS" : "FAIL", g_failures);
    return g_failures;
}
