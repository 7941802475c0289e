#include "posdiv/otf.hpp"

#include <cstdlib>
#include <stdexcept>

namespace posdiv {

OtfState otf_init(int radix)
{
    if (radix != 2 && radix != 4) {
        throw std::invalid_argument("on-the-fly conversion supports radix 2 and 4");
    }
    return OtfState{0, 0, 0, radix};
}

OtfState otf_append(const OtfState& state, int digit)
{
    const int r = state.radix;
    const int lg = state.log2_radix();
    const int mag = std::abs(digit);
    if (mag > r - 1) {
        throw std::invalid_argument("digit outside the radix");
    }
    if ((state.iterations + 1) * lg > 126) {
        throw std::length_error("on-the-fly registers exhausted");
    }
    OtfState next = state;
    next.iterations = state.iterations + 1;
    next.q = digit >= 0 ? ((state.q << lg) | static_cast<u128>(digit))
                        : ((state.qd << lg) | static_cast<u128>(r - mag));
    next.qd = digit > 0 ? ((state.q << lg) | static_cast<u128>(digit - 1))
                        : ((state.qd << lg) | static_cast<u128>((r - 1) - mag));
    return next;
}

u128 otf_finalize(const OtfState& state, bool remainder_negative)
{
    return remainder_negative ? state.qd : state.q;
}

std::string otf_q_bits(const OtfState& state)
{
    return to_binary(state.q, state.bit_count());
}

std::string otf_qd_bits(const OtfState& state)
{
    return to_binary(state.qd, state.bit_count());
}

}  // namespace posdiv
