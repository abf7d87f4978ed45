#include "defconn/topology.hpp"

#include <numeric>

#include "defconn/errors.hpp"

namespace defconn {

namespace {
Rational reduced(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num, den);
    if (g == 0) return Rational{0, 1};
    return Rational{num / g, den / g};
}
}  // namespace

TwistorInvariants chern_numbers(std::int64_t chi, std::int64_t tau, Sign sign) {
    if (sign == Sign::NA) fail(ErrorCode::InvalidArgument, "sign must be Positive or Negative");

    TwistorInvariants inv;
    inv.sign = sign;
    inv.c3 = 2 * chi;
    inv.k_cubed = reduced(2 * chi + 3 * tau, 4);
    if (sign == Sign::Positive) {
        inv.c1_cubed = 16 * (2 * chi + 3 * tau);
        inv.c1_c2 = 12 * (chi + tau);
        inv.c2_omega = 6 * (chi + tau);
    } else {
        inv.c1_cubed = 0;
        inv.c1_c2 = 0;
        inv.c2_omega = -2 * (chi + 3 * tau);
    }
    return inv;
}

TwistorInvariants chern_numbers_complex_hyperbolic(std::int64_t chi, std::int64_t tau_complex) {
    return chern_numbers(chi, -tau_complex, Sign::Negative);
}

GateReport hitchin_thorpe_gate(std::int64_t chi, std::int64_t tau, DSign d_sign) {
    GateReport g;
    if (d_sign == DSign::Dpos) {
        g.admissible = 2 * chi + 3 * tau > 0;
        g.reason = g.admissible ? "2*chi + 3*tau > 0" : "2*chi + 3*tau <= 0";
    } else {
        g.admissible = chi == 0 && tau < 0;
        g.reason = g.admissible ? "chi = 0 and tau < 0"
                                : (chi != 0 ? "chi != 0" : "tau >= 0");
    }
    return g;
}

TwistorDegreeReport twistor_degree(const SurfaceData& surf) {
    if (surf.double_points < 0) fail(ErrorCode::InvalidArgument, "double_points must be >= 0");
    TwistorDegreeReport rep;
    rep.degree = surf.euler + surf.self_intersection - 2 * surf.double_points;
    rep.adjunction_negative_ok = rep.degree < 0;
    rep.adjunction_positive_ok = rep.degree > 0;
    return rep;
}

}  // namespace defconn
