#pragma once

#include <cstdint>
#include <string>

#include "defconn/classify.hpp"

// Closed-form topological invariants of the symplectic sphere bundle over a
// compact oriented four-manifold with Euler characteristic chi and signature
// tau. Everything here is exact integer / rational arithmetic.

namespace defconn {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

struct TwistorInvariants {
    std::int64_t c1_cubed = 0;
    std::int64_t c1_c2 = 0;
    std::int64_t c3 = 0;
    std::int64_t c2_omega = 0;
    Rational k_cubed;  // (2 chi + 3 tau) / 4
    Sign sign = Sign::Positive;
};

struct SurfaceData {
    std::int64_t euler = 0;             // chi(Sigma)
    std::int64_t self_intersection = 0;  // Sigma . Sigma
    std::int64_t double_points = 0;      // d >= 0, 0 for embeddings
};

struct TwistorDegreeReport {
    std::int64_t degree = 0;
    bool adjunction_negative_ok = false;  // degree < 0
    bool adjunction_positive_ok = false;  // degree > 0
};

enum class DSign { Dpos, Dneg };

struct GateReport {
    bool admissible = false;
    std::string reason;
};

// Positive sign: c1^3 = 16(2chi+3tau), c1.c2 = 12(chi+tau), c3 = 2chi,
// c2.[w] = 6(chi+tau). Negative sign: c1^3 = c1.c2 = 0, c3 = 2chi,
// c2.[w] = -2(chi+3tau). Always k^3 = (2chi+3tau)/4.
TwistorInvariants chern_numbers(std::int64_t chi, std::int64_t tau, Sign sign);

// Convenience input for the complex-hyperbolic case: takes the pair
// (chi, tau) in the complex orientation and flips the signature sign before
// applying the negative branch.
TwistorInvariants chern_numbers_complex_hyperbolic(std::int64_t chi, std::int64_t tau_complex);

// D > 0 requires 2chi + 3tau > 0; D < 0 requires chi = 0 and tau < 0.
GateReport hitchin_thorpe_gate(std::int64_t chi, std::int64_t tau, DSign d_sign);

// degree = chi(Sigma) + Sigma.Sigma - 2d (normal-bundle correction for
// immersions with d double points; branch-point corrections unsupported).
TwistorDegreeReport twistor_degree(const SurfaceData& surf);

}  // namespace defconn
