// posdiv: command-line front end for the posit digit-recurrence divider.
//
//   posdiv div    --n 16 --x 0x3a00 --d 0x4800 [--variant srt-cs-of-fr --radix 4 --scaled] [--trace] [--json]
//   posdiv sweep  --n 8 --exhaustive | --random 100000 [--all-variants] [--seed 7] [--json]
//   posdiv cycles --n 32
//   posdiv table  [--verify]
//
// Exit status: 0 on success, 1 on any oracle mismatch or invariant
// violation, 2 on usage errors.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <json.hpp>

#include "posdiv/divider.hpp"
#include "posdiv/oracle.hpp"
#include "posdiv/qds.hpp"
#include "posdiv/sweep.hpp"

namespace {

using namespace posdiv;

struct VariantOptions {
    std::string variant = "srt-cs-of-fr";
    int radix = 2;
    bool scaled = false;
    bool all = false;

    void add_to(CLI::App& app)
    {
        app.add_option("--variant", variant, "nrd, srt, srt-cs, srt-cs-of, srt-cs-of-fr")
            ->capture_default_str();
        app.add_option("--radix", radix, "2 or 4")->check(CLI::IsMember({2, 4}))->capture_default_str();
        app.add_flag("--scaled", scaled, "prescale operands (radix 4)");
        app.add_flag("--all-variants", all, "run every implemented configuration");
    }

    std::vector<DivisionConfig> configs(int width) const
    {
        if (all) {
            return DivisionConfig::all(width);
        }
        const auto alg = parse_algorithm(variant);
        if (!alg) {
            throw ConfigError("unknown variant '" + variant + "'");
        }
        DivisionConfig cfg{*alg, radix, scaled, width};
        cfg.validate();
        return {cfg};
    }
};

int run_div(int n, const std::string& x_text, const std::string& d_text, const VariantOptions& vo, bool trace,
            bool json)
{
    const PositWord x = parse_posit(x_text, n);
    const PositWord d = parse_posit(d_text, n);
    const PositWord expected = oracle::divide(x, d);
    int status = 0;
    for (const DivisionConfig& cfg : vo.configs(n)) {
        PositWord q;
        if (trace) {
            const DivisionTrace t = trace_division(x, d, cfg);
            std::cout << t.to_jsonl();
            q = t.quotient;
            if (!t.checks.reconstruction_ok || !t.checks.lookahead_agrees) {
                status = 1;
            }
        } else {
            q = divide(x, d, cfg).quotient;
            if (json) {
                nlohmann::ordered_json j{{"config", cfg.name()},
                                         {"width", n},
                                         {"dividend", format_binary(x)},
                                         {"divisor", format_binary(d)},
                                         {"quotient", format_binary(q)},
                                         {"hex", format_hex(q)},
                                         {"value", format_value(q)},
                                         {"cycles", latency(cfg)},
                                         {"oracle_match", q == expected}};
                std::cout << j.dump() << '\n';
            } else {
                std::printf("%-22s %s  %s  %-24s cycles=%d%s\n", cfg.name().c_str(), format_binary(q).c_str(),
                            format_hex(q).c_str(), format_value(q).c_str(), latency(cfg),
                            q == expected ? "" : "  MISMATCH");
            }
        }
        if (q != expected) {
            status = 1;
        }
    }
    if (!json && !trace) {
        std::printf("%-22s %s  %s  %s\n", "oracle", format_binary(expected).c_str(), format_hex(expected).c_str(),
                    format_value(expected).c_str());
    }
    return status;
}

int run_cycles(int n, bool json)
{
    if (!json) {
        std::printf("%-22s %4s %4s %6s\n", "variant", "h", "It", "cycles");
    }
    for (const DivisionConfig& cfg : DivisionConfig::all(n)) {
        cfg.validate();
        const IterationCount c = iteration_count(n, cfg.digit_set());
        if (json) {
            nlohmann::ordered_json j{{"config", cfg.name()}, {"width", n},
                                     {"h", c.result_bits},   {"It", c.iterations},
                                     {"cycles", latency(cfg)}};
            std::cout << j.dump() << '\n';
        } else {
            std::printf("%-22s %4d %4d %6d\n", cfg.name().c_str(), c.result_bits, c.iterations, latency(cfg));
        }
    }
    return 0;
}

int run_table(bool verify)
{
    std::cout << r4_table().serialize();
    if (!verify) {
        return 0;
    }
    const ContainmentReport rep = verify_r4_table(r4_table());
    std::printf("# containment: %d cells, %d reachable, %s\n", rep.cells_checked, rep.reachable_cells,
                rep.ok ? "ok" : rep.first_failure.c_str());
    return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bit-accurate posit<n,2> digit-recurrence division"};
    app.set_config("--config", "", "key = value file; sections name subcommands, e.g. [sweep]");
    app.require_subcommand(1);

    int n = 16;
    std::string x_text;
    std::string d_text;
    bool trace = false;
    bool json = false;
    VariantOptions div_variants;
    CLI::App* div = app.add_subcommand("div", "divide one operand pair");
    div->add_option("--n", n, "posit width")->capture_default_str();
    div->add_option("--x", x_text, "dividend (0b..., 0x..., decimal pattern, or n-char bit string)")->required();
    div->add_option("--d", d_text, "divisor")->required();
    div_variants.add_to(*div);
    div->add_flag("--trace", trace, "emit the per-iteration trace as JSON lines");
    div->add_flag("--json", json, "JSON-lines output");

    SweepOptions sweep_opt;
    VariantOptions sweep_variants;
    bool sweep_json = false;
    int sweep_n = 8;
    CLI::App* sweep = app.add_subcommand("sweep", "compare against the exact oracle");
    sweep->add_option("--n", sweep_n, "posit width")->capture_default_str();
    auto* exh = sweep->add_flag("--exhaustive", sweep_opt.exhaustive, "all 2^(2n) pairs (n <= 12)");
    sweep->add_option("--random", sweep_opt.random_count, "random pairs beyond the edge-case cross product")
        ->excludes(exh);
    sweep->add_option("--seed", sweep_opt.seed, "random stream seed")->capture_default_str();
    sweep->add_option("--workers", sweep_opt.workers, "threads (default: POSDIV_WORKERS or all cores)");
    sweep->add_flag("--deep", sweep_opt.deep_checks, "also check reconstruction and lookahead per division");
    sweep->add_option("--max-reported", sweep_opt.max_reported, "failures listed")->capture_default_str();
    sweep_variants.add_to(*sweep);
    sweep->add_flag("--json", sweep_json, "JSON-lines output");

    int cycles_n = 16;
    bool cycles_json = false;
    CLI::App* cycles = app.add_subcommand("cycles", "iterations and latency per configuration");
    cycles->add_option("--n", cycles_n, "posit width")->capture_default_str();
    cycles->add_flag("--json", cycles_json, "JSON-lines output");

    bool verify = false;
    CLI::App* table = app.add_subcommand("table", "print the radix-4 selection table");
    table->add_flag("--verify", verify, "re-run the containment check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*div) {
            return run_div(n, x_text, d_text, div_variants, trace, json);
        }
        if (*sweep) {
            sweep_opt.width = sweep_n;
            sweep_opt.configs = sweep_variants.configs(sweep_n);
            const SweepReport rep = run_sweep(sweep_opt);
            std::cout << (sweep_json ? rep.to_jsonl() : rep.to_table());
            return rep.passed() ? 0 : 1;
        }
        if (*cycles) {
            return run_cycles(cycles_n, cycles_json);
        }
        if (*table) {
            return run_table(verify);
        }
    } catch (const PositError& e) {
        std::cerr << "posdiv: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "posdiv: " << e.what() << '\n';
        return 2;
    } catch (const DivisionError& e) {
        std::cerr << "posdiv: invariant violation: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
