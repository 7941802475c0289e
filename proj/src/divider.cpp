#include "posdiv/divider.hpp"

#include <array>

#include <boost/multiprecision/cpp_int.hpp>

#include "posdiv/otf.hpp"
#include "posdiv/prescale.hpp"
#include "posdiv/qds.hpp"

namespace posdiv {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 5> kAlgorithmNames{{
    {Algorithm::NRD, "nrd"},
    {Algorithm::SRT, "srt"},
    {Algorithm::SRT_CS, "srt-cs"},
    {Algorithm::SRT_CS_OF, "srt-cs-of"},
    {Algorithm::SRT_CS_OF_FR, "srt-cs-of-fr"},
}};

}  // namespace

std::string_view algorithm_name(Algorithm a)
{
    for (const auto& [alg, name] : kAlgorithmNames) {
        if (alg == a) {
            return name;
        }
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name)
{
    for (const auto& [alg, n] : kAlgorithmNames) {
        if (n == name) {
            return alg;
        }
    }
    return std::nullopt;
}

bool DivisionConfig::carry_save() const
{
    return algorithm == Algorithm::SRT_CS || algorithm == Algorithm::SRT_CS_OF ||
           algorithm == Algorithm::SRT_CS_OF_FR;
}

bool DivisionConfig::on_the_fly() const
{
    return algorithm == Algorithm::SRT_CS_OF || algorithm == Algorithm::SRT_CS_OF_FR;
}

bool DivisionConfig::fast_remainder() const
{
    return algorithm == Algorithm::SRT_CS_OF_FR;
}

void DivisionConfig::validate() const
{
    if (width < 5 || width > kMaxWidth) {
        throw ConfigError("divider width must be in [5, 64], got " + std::to_string(width));
    }
    if (radix != 2 && radix != 4) {
        throw ConfigError("radix must be 2 or 4");
    }
    if (radix == 4 && !carry_save()) {
        throw ConfigError(std::string(algorithm_name(algorithm)) + " is implemented in radix 2 only");
    }
    if (scaled && radix != 4) {
        throw ConfigError("operand scaling applies to radix 4 only");
    }
}

std::string DivisionConfig::name() const
{
    std::string s = std::string(algorithm_name(algorithm)) + "/r" + std::to_string(radix);
    if (scaled) {
        s += "/scaled";
    }
    return s;
}

std::vector<DivisionConfig> DivisionConfig::all(int width)
{
    std::vector<DivisionConfig> out{
        {Algorithm::NRD, 2, false, width},
        {Algorithm::SRT, 2, false, width},
    };
    for (Algorithm a : {Algorithm::SRT_CS, Algorithm::SRT_CS_OF, Algorithm::SRT_CS_OF_FR}) {
        out.push_back({a, 2, false, width});
        out.push_back({a, 4, false, width});
        out.push_back({a, 4, true, width});
    }
    return out;
}

IterationCount iteration_count(int width, const DigitSet& digits)
{
    // floor(rho) is 1 only for maximal redundancy.
    const int floor_rho = digits.maximally_redundant() ? 1 : 0;
    IterationCount c;
    c.result_bits = width - 1 - floor_rho;
    c.iterations = (c.result_bits + digits.log2_radix() - 1) / digits.log2_radix();
    return c;
}

int latency(const DivisionConfig& cfg)
{
    return iteration_count(cfg.width, cfg.digit_set()).iterations + 3 + (cfg.scaled ? 1 : 0);
}

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt to_big(i128 v)
{
    const bool neg = v < 0;
    const u128 mag = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
    BigInt b = static_cast<std::uint64_t>(mag >> 64);
    b <<= 64;
    b += static_cast<std::uint64_t>(mag);
    return neg ? BigInt(-b) : b;
}

BigInt to_big(u128 v)
{
    return to_big(static_cast<i128>(v));
}

int select_digit(const DivisionConfig& cfg, const Residual& w, int row, std::string* y_hat_text)
{
    switch (cfg.algorithm) {
    case Algorithm::NRD: {
        // Exact sign of the conventional residual.
        if (y_hat_text != nullptr) {
            *y_hat_text = to_decimal(w.value() << 1, w.format().frac_bits);
        }
        return w.value() >= 0 ? 1 : -1;
    }
    case Algorithm::SRT: {
        const Estimate e{shifted_estimate(w, 2, 1), 1};
        if (y_hat_text != nullptr) {
            *y_hat_text = e.to_string();
        }
        return select_r2_nonredundant(e);
    }
    case Algorithm::SRT_CS:
    case Algorithm::SRT_CS_OF:
    case Algorithm::SRT_CS_OF_FR:
        break;
    }
    Estimate e;
    int digit;
    if (cfg.radix == 2) {
        e = Estimate{shifted_estimate(w, 2, 1), 1};
        digit = select_r2_carrysave(e);
    } else if (cfg.scaled) {
        e = Estimate{shifted_estimate(w, 4, 3), 3};
        digit = select_r4_scaled(e);
    } else {
        e = Estimate{shifted_estimate(w, 4, kR4EstimateFracBits), kR4EstimateFracBits};
        digit = select_r4_table(e, row);
    }
    if (y_hat_text != nullptr) {
        *y_hat_text = e.to_string();
    }
    return digit;
}

DivisionResult run(PositWord x_word, PositWord d_word, const DivisionConfig& cfg, DivisionTrace* trace,
                   bool with_checks)
{
    with_checks = with_checks || trace != nullptr;
    cfg.validate();
    const int n = cfg.width;
    if (x_word.width() != n || d_word.width() != n) {
        throw ConfigError("operand width does not match the configured width " + std::to_string(n));
    }

    DivisionResult result;
    result.cycles = latency(cfg);
    const DigitSet digits = cfg.digit_set();
    const IterationCount count = iteration_count(n, digits);
    if (trace != nullptr) {
        trace->cfg = cfg;
        trace->dividend = x_word;
        trace->divisor = d_word;
        trace->count = count;
        trace->cycles = result.cycles;
    }

    if (d_word.is_zero() || d_word.is_nar() || x_word.is_nar() || x_word.is_zero()) {
        result.quotient = x_word.is_zero() && !d_word.is_zero() && !d_word.is_nar() ? PositWord::zero(n)
                                                                                   : PositWord::nar(n);
        result.flags.special = true;
        if (with_checks) {
            result.checks = DivisionChecks{};
        }
        if (trace != nullptr) {
            trace->flags = result.flags;
            trace->quotient = result.quotient;
            trace->checks = DivisionChecks{};
        }
        return result;
    }

    const DecodedPosit x = decode(x_word);
    const DecodedPosit d = decode(d_word);
    const bool sign = x.sign != d.sign;
    const ScaleFactor sf_x = combine(x.regime, x.exponent);
    const ScaleFactor sf_d = combine(d.regime, d.exponent);

    // Significands 1.f read as fractions in [1/2, 1): one extra fraction bit.
    const int sig_fb = significand_frac_bits(n) + 1;
    const int init_shift = digits.init_shift();
    const int guard = cfg.scaled ? kPrescaleGuardBits : 0;
    const ResidualFormat fmt{sig_fb + init_shift + guard};
    const int row = divisor_row(d.significand, significand_frac_bits(n));

    i128 x_raw = static_cast<i128>(x.significand);
    i128 d_raw = static_cast<i128>(d.significand);
    if (cfg.scaled) {
        const PrescaleFactor m = pick_scale(static_cast<unsigned>(row >> 1));
        x_raw = apply_scale(x_raw, m);
        d_raw = apply_scale(d_raw, m);
        if (trace != nullptr) {
            trace->prescale = m.to_string();
        }
    }
    const int operand_fb = sig_fb + guard;
    d_raw <<= fmt.frac_bits - operand_fb;

    Residual w = init_residual(x_raw, operand_fb, digits, fmt, cfg.carry_save());
    const i128 w0 = w.value();

    const int lg = digits.log2_radix();
    OtfState otf = otf_init(cfg.radix);
    i128 accumulated = 0;  // conventional quotient register without on-the-fly conversion

    if (trace != nullptr) {
        trace->residual_format = fmt;
        trace->pre_normalize = subtract_split(sf_x, sf_d, false);
        trace->rows.reserve(static_cast<std::size_t>(count.iterations));
    }

    try {
        for (int i = 1; i <= count.iterations; ++i) {
            std::string y_hat;
            const int digit = select_digit(cfg, w, row, trace != nullptr ? &y_hat : nullptr);
            w = step(w, d_raw, digit, digits);
            if (cfg.on_the_fly()) {
                otf = otf_append(otf, digit);
            } else {
                accumulated = (accumulated << lg) + digit;
            }
            if (trace != nullptr) {
                TraceRow r;
                r.iter = i;
                r.y_hat = std::move(y_hat);
                r.digit = digit;
                r.ws_hex = residual_hex(w.sum_word(), fmt);
                r.wc_hex = residual_hex(w.carry_word(), fmt);
                if (cfg.on_the_fly()) {
                    r.q_bits = otf_q_bits(otf);
                    r.qd_bits = otf_qd_bits(otf);
                } else {
                    r.q_bits = to_binary(static_cast<u128>(accumulated), i * lg);
                }
                trace->rows.push_back(std::move(r));
            }
        }
    } catch (const ResidualBoundError& e) {
        throw DivisionError(cfg.name() + " " + format_binary(x_word) + " / " + format_binary(d_word) + ": " +
                            e.what());
    } catch (const SelectionError& e) {
        throw DivisionError(cfg.name() + " " + format_binary(x_word) + " / " + format_binary(d_word) + ": " +
                            e.what());
    }

    // Termination: sign and zero of the final residual.
    bool negative;
    bool zero;
    const i128 w_final = w.value();
    const i128 corrected = w_final < 0 ? w_final + d_raw : w_final;
    DivisionChecks checks;
    checks.rows = count.iterations;
    if (cfg.fast_remainder()) {
        const SignZero sz = sign_zero_lookahead(w.sum_word(), w.carry_word(), fmt.width());
        negative = sz.negative;
        // With maximal redundancy w = -d is reachable, so a negative residual
        // needs its own zero test on w + d.
        zero = sz.negative ? zero_lookahead3(w.sum_word(), w.carry_word(), d_raw, fmt.width()) : sz.zero;
        checks.lookahead_agrees = negative == (w_final < 0) && zero == (corrected == 0);
    } else {
        negative = w_final < 0;
        zero = corrected == 0;
    }

    // Correction: QD selection, or one ulp off the conventional register.
    u128 q_c;
    if (cfg.on_the_fly()) {
        q_c = otf_finalize(otf, negative);
    } else {
        q_c = static_cast<u128>(accumulated - (negative ? 1 : 0));
    }

    // Compensation for w(0) = x/p: q = p * q(It), i.e. fewer fraction bits.
    const int q_frac_bits = count.iterations * lg - init_shift;
    const bool below_one = ((q_c >> q_frac_bits) & 1) == 0;
    const int fb = below_one ? q_frac_bits - 1 : q_frac_bits;
    const std::uint64_t fraction = static_cast<std::uint64_t>(q_c & low_mask(fb));
    const RegimeExponent ke = subtract_split(sf_x, sf_d, below_one);

    result.flags.remainder_negative = negative;
    result.flags.remainder_zero = zero;
    result.flags.normalized = below_one;
    result.quotient = encode_round(NormalizedValue{sign, ke.regime, ke.exponent, fraction, fb, !zero}, n);

    if (with_checks) {
        // w0 r^It == d Q(It) + w(It), Q(It) the uncorrected digit sum.
        const int shift = lg * count.iterations;
        if (fmt.width() + shift + 4 < 126) {
            const i128 q_int = cfg.on_the_fly() ? static_cast<i128>(otf.q) : accumulated;
            checks.reconstruction_ok = (w0 << shift) == d_raw * q_int + w_final;
        } else {
            const BigInt q_int = cfg.on_the_fly() ? to_big(otf.q) : to_big(accumulated);
            checks.reconstruction_ok = (to_big(w0) << shift) == to_big(d_raw) * q_int + to_big(w_final);
        }
        result.checks = checks;
    }
    if (trace != nullptr) {
        trace->flags = result.flags;
        trace->pre_round_quotient = to_binary(q_c, q_frac_bits + 1);
        trace->pre_round_frac_bits = q_frac_bits;
        trace->remainder = to_decimal(corrected << init_shift, fmt.frac_bits);
        trace->quotient = result.quotient;
        trace->checks = checks;
    }
    return result;
}

}  // namespace

DivisionResult divide(PositWord dividend, PositWord divisor, const DivisionConfig& cfg)
{
    return run(dividend, divisor, cfg, nullptr, false);
}

DivisionResult divide_checked(PositWord dividend, PositWord divisor, const DivisionConfig& cfg)
{
    return run(dividend, divisor, cfg, nullptr, true);
}

DivisionTrace trace_division(PositWord dividend, PositWord divisor, const DivisionConfig& cfg)
{
    DivisionTrace trace;
    run(dividend, divisor, cfg, &trace, true);
    return trace;
}

}  // namespace posdiv
