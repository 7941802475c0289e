#include "posdiv/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <thread>

#include <json.hpp>

#include "posdiv/oracle.hpp"

namespace posdiv {

std::vector<PositWord> edge_operands(int width)
{
    const int n = width;
    const std::uint64_t mask = static_cast<std::uint64_t>(low_mask(n));
    const int fb = significand_frac_bits(n);
    const std::uint64_t ones = static_cast<std::uint64_t>(low_mask(fb));
    std::vector<std::uint64_t> raw{
        PositWord::one(n).bits(),
        PositWord::one(n).bits() + 1,
        PositWord::one(n).bits() - 1,
    };
    const std::uint64_t maxp = PositWord::maxpos(n).bits();
    for (std::uint64_t off = 0; off < 4; ++off) {
        raw.push_back(maxp - off);
        raw.push_back(1 + off);
    }
    // Regime 0 and -1, extreme exponents, all-ones or lowest-bit fractions.
    for (std::uint64_t regime : {std::uint64_t{0b10}, std::uint64_t{0b01}}) {
        for (std::uint64_t e : {std::uint64_t{0}, std::uint64_t{3}}) {
            const std::uint64_t head = (regime << (n - 3)) | (e << fb);
            raw.push_back(head | ones);
            raw.push_back(head | (fb > 0 ? 1 : 0));
        }
    }
    std::vector<PositWord> out{PositWord::zero(n), PositWord::nar(n)};
    for (std::uint64_t r : raw) {
        const PositWord w{r & mask, n};
        out.push_back(w);
        out.push_back(w.negated());
    }
    std::sort(out.begin(), out.end(), [](PositWord a, PositWord b) { return a.bits() < b.bits(); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::pair<PositWord, PositWord> random_pair(int width, std::uint64_t seed, std::uint64_t index,
                                            const std::vector<PositWord>& edges)
{
    const std::uint64_t e = edges.size();
    if (index < e * e) {
        return {edges[index / e], edges[index % e]};
    }
    const std::uint64_t mask = static_cast<std::uint64_t>(low_mask(width));
    const std::uint64_t base = splitmix64(seed ^ splitmix64(index));
    const std::uint64_t a = splitmix64(base);
    const std::uint64_t b = splitmix64(base + 1);
    const std::uint64_t c = splitmix64(base + 2);
    PositWord x{a & mask, width};
    PositWord d{b & mask, width};
    if ((c & 7) == 0) {
        x = edges[(c >> 8) % e];
    }
    if (((c >> 3) & 7) == 0) {
        d = edges[(c >> 32) % e];
    }
    return {x, d};
}

unsigned resolve_workers(unsigned requested)
{
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("POSDIV_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Partial {
    std::vector<VariantStats> variants;
    std::vector<SweepFailure> failures;
    std::uint64_t pairs = 0;
    std::uint64_t disagreements = 0;
};

bool failure_less(const SweepFailure& a, const SweepFailure& b)
{
    if (a.dividend.bits() != b.dividend.bits()) {
        return a.dividend.bits() < b.dividend.bits();
    }
    if (a.divisor.bits() != b.divisor.bits()) {
        return a.divisor.bits() < b.divisor.bits();
    }
    if (a.config != b.config) {
        return a.config < b.config;
    }
    return a.kind < b.kind;
}

void keep_failure(std::vector<SweepFailure>& list, SweepFailure f, std::size_t cap)
{
    if (cap == 0) {
        return;
    }
    list.push_back(std::move(f));
    // Keep the smallest `cap` entries so the merged list is order independent.
    if (list.size() > 2 * cap) {
        std::sort(list.begin(), list.end(), failure_less);
        list.resize(cap);
    }
}

void check_pair(PositWord x, PositWord d, const SweepOptions& opt, Partial& part)
{
    const PositWord expected = oracle::divide(x, d);
    ++part.pairs;
    std::optional<PositWord> first;
    bool disagree = false;
    for (std::size_t i = 0; i < opt.configs.size(); ++i) {
        const DivisionConfig& cfg = opt.configs[i];
        VariantStats& stats = part.variants[i];
        ++stats.cases;
        auto fail = [&](const char* kind, PositWord got, std::string detail) {
            keep_failure(part.failures, SweepFailure{kind, cfg.name(), x, d, expected, got, std::move(detail)},
                         opt.max_reported);
        };
        DivisionResult r;
        try {
            r = opt.deep_checks ? divide_checked(x, d, cfg) : divide(x, d, cfg);
        } catch (const DivisionError& e) {
            ++stats.violations;
            fail("bound", PositWord{}, e.what());
            continue;
        }
        if (!first) {
            first = r.quotient;
        } else if (*first != r.quotient) {
            disagree = true;
        }
        if (r.quotient != expected) {
            ++stats.mismatches;
            fail("mismatch", r.quotient, "");
        }
        if (r.checks && !r.flags.special) {
            if (!r.checks->reconstruction_ok) {
                ++stats.violations;
                fail("reconstruction", r.quotient, "");
            }
            if (!r.checks->lookahead_agrees) {
                ++stats.violations;
                fail("lookahead", r.quotient, "");
            }
            if (r.checks->rows != stats.iterations) {
                ++stats.violations;
                fail("rows", r.quotient, std::to_string(r.checks->rows) + " steps");
            }
        }
    }
    if (disagree) {
        ++part.disagreements;
    }
}

}  // namespace

SweepReport run_sweep(const SweepOptions& opt)
{
    const int n = opt.width;
    if (opt.exhaustive && (n < 5 || n > kMaxExhaustiveWidth)) {
        throw ConfigError("exhaustive sweeps need 5 <= n <= " + std::to_string(kMaxExhaustiveWidth));
    }
    if (opt.configs.empty()) {
        throw ConfigError("no divider configurations selected");
    }
    for (const DivisionConfig& cfg : opt.configs) {
        cfg.validate();
        if (cfg.width != n) {
            throw ConfigError("configuration width differs from the sweep width");
        }
    }

    const std::vector<PositWord> edges = edge_operands(n);
    const std::uint64_t total = opt.exhaustive ? (std::uint64_t{1} << (2 * n))
                                               : edges.size() * edges.size() + opt.random_count;
    const std::uint64_t mask = static_cast<std::uint64_t>(low_mask(n));

    std::vector<VariantStats> blank;
    for (const DivisionConfig& cfg : opt.configs) {
        VariantStats s;
        s.cfg = cfg;
        s.iterations = iteration_count(n, cfg.digit_set()).iterations;
        s.cycles = latency(cfg);
        blank.push_back(s);
    }

    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(resolve_workers(opt.workers), std::max<std::uint64_t>(total, 1)));
    std::vector<Partial> parts(workers, Partial{blank, {}, 0});
    auto work = [&](unsigned w) {
        const std::uint64_t begin = total * w / workers;
        const std::uint64_t end = total * (w + 1) / workers;
        for (std::uint64_t i = begin; i < end; ++i) {
            if (opt.exhaustive) {
                check_pair(PositWord{(i >> n) & mask, n}, PositWord{i & mask, n}, opt, parts[w]);
            } else {
                const auto [x, d] = random_pair(n, opt.seed, i, edges);
                check_pair(x, d, opt, parts[w]);
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back(work, w);
        }
        for (auto& t : threads) {
            t.join();
        }
    }

    SweepReport report;
    report.width = n;
    report.variants = blank;
    for (const Partial& p : parts) {
        report.pairs += p.pairs;
        report.disagreements += p.disagreements;
        for (std::size_t i = 0; i < blank.size(); ++i) {
            report.variants[i].cases += p.variants[i].cases;
            report.variants[i].mismatches += p.variants[i].mismatches;
            report.variants[i].violations += p.variants[i].violations;
        }
        report.failures.insert(report.failures.end(), p.failures.begin(), p.failures.end());
    }
    for (const VariantStats& v : report.variants) {
        report.divisions += v.cases;
        report.mismatches += v.mismatches;
        report.violations += v.violations;
    }
    std::sort(report.failures.begin(), report.failures.end(), failure_less);
    if (report.failures.size() > opt.max_reported) {
        report.failures.resize(opt.max_reported);
    }
    return report;
}

std::string SweepReport::to_table() const
{
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-22s %4s %6s %12s %10s %10s\n", "variant", "It", "cycles", "cases",
                  "mismatch", "violation");
    out += buf;
    for (const VariantStats& v : variants) {
        std::snprintf(buf, sizeof buf, "%-22s %4d %6d %12llu %10llu %10llu\n", v.cfg.name().c_str(), v.iterations,
                      v.cycles, static_cast<unsigned long long>(v.cases),
                      static_cast<unsigned long long>(v.mismatches), static_cast<unsigned long long>(v.violations));
        out += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "n=%d pairs=%llu divisions=%llu mismatches=%llu violations=%llu disagreements=%llu -> %s\n", width,
                  static_cast<unsigned long long>(pairs), static_cast<unsigned long long>(divisions),
                  static_cast<unsigned long long>(mismatches), static_cast<unsigned long long>(violations),
                  static_cast<unsigned long long>(disagreements), passed() ? "PASS" : "FAIL");
    out += buf;
    for (const SweepFailure& f : failures) {
        out += "  " + f.kind + " " + f.config + " " + format_binary(f.dividend) + " / " + format_binary(f.divisor) +
               " expected " + format_binary(f.expected);
        if (f.kind != "bound") {
            out += " got " + format_binary(f.got);
        }
        if (!f.detail.empty()) {
            out += " (" + f.detail + ")";
        }
        out += '\n';
    }
    return out;
}

std::string SweepReport::to_jsonl() const
{
    using nlohmann::ordered_json;
    std::string out;
    for (const VariantStats& v : variants) {
        ordered_json j{{"type", "variant"},        {"config", v.cfg.name()},     {"width", width},
                       {"iterations", v.iterations}, {"cycles", v.cycles},       {"cases", v.cases},
                       {"mismatches", v.mismatches}, {"violations", v.violations}};
        out += j.dump() + '\n';
    }
    for (const SweepFailure& f : failures) {
        ordered_json j{{"type", "failure"},
                       {"kind", f.kind},
                       {"config", f.config},
                       {"dividend", format_binary(f.dividend)},
                       {"divisor", format_binary(f.divisor)},
                       {"expected", format_binary(f.expected)}};
        if (f.kind != "bound") {
            j["got"] = format_binary(f.got);
        }
        if (!f.detail.empty()) {
            j["detail"] = f.detail;
        }
        out += j.dump() + '\n';
    }
    ordered_json summary{{"type", "summary"},        {"width", width},           {"pairs", pairs},
                         {"divisions", divisions},   {"mismatches", mismatches}, {"violations", violations},
                         {"disagreements", disagreements}, {"passed", passed()}};
    out += summary.dump() + '\n';
    return out;
}

}  // namespace posdiv
