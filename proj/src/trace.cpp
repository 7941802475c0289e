#include <json.hpp>

#include "posdiv/divider.hpp"

namespace posdiv {

std::string DivisionTrace::to_jsonl() const
{
    using nlohmann::ordered_json;
    std::string out;

    ordered_json header{
        {"type", "header"},
        {"config", cfg.name()},
        {"width", cfg.width},
        {"dividend", format_binary(dividend)},
        {"divisor", format_binary(divisor)},
        {"h", count.result_bits},
        {"It", count.iterations},
        {"cycles", cycles},
    };
    if (!flags.special) {
        header["residual_width"] = residual_format.width();
        header["residual_frac_bits"] = residual_format.frac_bits;
        header["k_q"] = pre_normalize.regime;
        header["e_q"] = pre_normalize.exponent;
        if (!prescale.empty()) {
            header["prescale"] = prescale;
        }
    }
    out += header.dump() + '\n';

    for (const TraceRow& r : rows) {
        ordered_json row{
            {"type", "iteration"},
            {"iter", r.iter},
            {"y_hat", r.y_hat},
            {"digit", r.digit},
            {"ws_hex", r.ws_hex},
            {"wc_hex", r.wc_hex},
            {"Q_bits", r.q_bits},
            {"QD_bits", r.qd_bits},
        };
        out += row.dump() + '\n';
    }

    ordered_json footer{{"type", "footer"}, {"special", flags.special}};
    if (!flags.special) {
        footer["remainder_negative"] = flags.remainder_negative;
        footer["remainder_zero"] = flags.remainder_zero;
        footer["normalized"] = flags.normalized;
        footer["pre_round_quotient"] = pre_round_quotient;
        footer["pre_round_frac_bits"] = pre_round_frac_bits;
        footer["remainder"] = remainder;
        footer["lookahead_agrees"] = checks.lookahead_agrees;
        footer["reconstruction_ok"] = checks.reconstruction_ok;
    }
    footer["result"] = format_binary(quotient);
    out += footer.dump() + '\n';
    return out;
}

}  // namespace posdiv
