#pragma once

#include <optional>
#include <string>

#include "defconn/classify.hpp"
#include "defconn/curvature.hpp"
#include "defconn/linalg.hpp"

// Sectional curvature over the decomposable cone. Decomposable 2-vectors are
// u + v with u in Lambda^+, v in Lambda^- of equal length; for unit u, v the
// value used throughout is
//     sec(u + v) = (Au, u) + 2(Bu, v) + (Cv, v),
// which is twice the standard sectional curvature of the plane dual to
// (u + v)/sqrt(2) in the fixed Lambda^2 scale. Ratios are scale-free.

namespace defconn {

struct PinchingOffsets {
    double a1 = 0.0, a2 = 0.0, c1 = 0.0, c2 = 0.0;
};

struct PinchingReport {
    double min_sec = 0.0;
    double max_sec = 0.0;
    std::optional<double> ratio;  // min|sec| / max|sec|, defined iff sign_uniform
    bool sign_uniform = false;
    Vec3 u_min, v_min, u_max, v_max;
    std::optional<PinchingOffsets> offsets;  // eigenvalue offsets after s = 12 normalization
};

double sectional_value(const CurvatureOperator& R, const Vec3& u, const Vec3& v);

// Extremizes sec over S^2 x S^2: product golden-spiral lattices (grid_n^2
// points per sphere) seeded into alternating exact quadratic steps on each
// sphere factor. Deterministic.
PinchingReport sectional_extrema(const CurvatureOperator& R, int grid_n = kDefaultGridN,
                                 int refine_iters = kDefaultRefineIters);

std::optional<double> pinching_ratio(const CurvatureOperator& R);

// Exact maximization of v^T C v + 2 b^T v over the unit sphere (trust-region
// style secular equation). Exposed for reuse and testing.
double sphere_quadratic_max(const Mat3& C, const Vec3& b, Vec3& argmax);

struct VerifyOptions {
    int n_kept = 10000;       // number of qualifying operators to test
    std::uint64_t seed = 42;
    bool strengthened = true;
    double sigma = 0.25;      // dispersion of the Weyl / Ricci entries
    int filter_grid_n = 16;   // lattice used when confirming extrema
    int filter_refine = 40;
    int strengthened_grid_n = 64;
    std::uint64_t max_draws = 0;  // 0: 1000 * n_kept
};

struct VerifyReport {
    std::uint64_t drawn = 0;
    std::uint64_t kept = 0;
    std::uint64_t violations = 0;
    double min_d_margin = 0.0;            // min over kept of lambda_min(D), both orientations
    double min_strengthened_margin = 0.0; // min over kept of the grid margins
    std::string first_violation;          // serialized offending operator, empty if none
};

// Draws seeded random trace-constrained operators, keeps those with
// sign-uniform sectional curvature and pinching ratio > 2/5, and checks that
// each kept operator has D > 0 in both orientations (and, in strengthened
// mode, |<Au,u>| > |Bu| and |<Cv,v>| > |B^T v| on the sphere grids).
VerifyReport run_pinching_verification(const VerifyOptions& opt);

// Same, but throws TheoremViolation when any check fails.
VerifyReport verify_pinching_theorem(int n_samples, std::uint64_t seed, bool strengthened);

// Random trace-constrained operator used by the verification sampler:
// Gaussian Weyl and Ricci entries of dispersion sigma, s uniform in [-24, 24].
CurvatureOperator sample_operator(Rng& rng, double sigma);

}  // namespace defconn
