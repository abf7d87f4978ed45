#include "defconn/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "defconn/errors.hpp"

namespace defconn {

Mat3 d_operator(const CurvatureOperator& R) {
    return symmetrize(R.A * R.A - transpose(R.B) * R.B);
}

DefiniteClassification classify(const CurvatureOperator& R, double tol) {
    const Mat3 D = d_operator(R);
    const SymEigen e = sym_eigen(D);

    DefiniteClassification out;
    out.margin = std::min({std::abs(e.values[0]), std::abs(e.values[1]), std::abs(e.values[2])});
    out.d_signature = sym_signature(e, 0.0);

    if (out.margin <= tol) {
        out.boundary = true;
        out.verdict = Verdict::Indefinite;
        return out;
    }
    if (out.d_signature == 3) {
        out.verdict = Verdict::Definite;
        out.orientation = Orientation::Same;
        out.sign = det(R.A) > 0.0 ? Sign::Positive : Sign::Negative;
    } else if (out.d_signature == -3) {
        out.verdict = Verdict::Definite;
        out.orientation = Orientation::Opposite;
        out.sign = det(R.B) > 0.0 ? Sign::Positive : Sign::Negative;
    } else {
        out.verdict = Verdict::Indefinite;
    }
    return out;
}

namespace {

double taming_objective(const CurvatureOperator& R, const Vec3& v) {
    const Vec3 av = R.A * v;
    const Vec3 bv = R.B * v;
    return std::abs(dot(av, v)) - norm(bv);
}

// Projected coordinate descent on the unit sphere with a shrinking step.
Vec3 refine_sphere_min(const CurvatureOperator& R, Vec3 v, int iters, double& best) {
    double step = 0.35;
    const Vec3 axes[3] = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    for (int it = 0; it < iters; ++it) {
        bool improved = false;
        for (const Vec3& d : axes) {
            for (double sgn : {1.0, -1.0}) {
                const Vec3 cand = normalized(v + d * (sgn * step));
                const double val = taming_objective(R, cand);
                if (val < best) {
                    best = val;
                    v = cand;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
        if (step < 1e-14) break;
    }
    return v;
}

}  // namespace

TamingReport taming_margin(const CurvatureOperator& R, int grid_n, int refine_iters, double tol) {
    if (grid_n < 16) fail(ErrorCode::InvalidArgument, "taming grid_n must be >= 16");

    const auto grid = fibonacci_sphere(grid_n * grid_n);
    TamingReport rep;
    rep.margin = taming_objective(R, grid.front());
    rep.argmin_v = grid.front();
    for (const Vec3& v : grid) {
        const double val = taming_objective(R, v);
        if (val < rep.margin) {
            rep.margin = val;
            rep.argmin_v = v;
        }
    }
    rep.argmin_v = refine_sphere_min(R, rep.argmin_v, refine_iters, rep.margin);

    if (rep.margin > tol) {
        const double da = det(R.A);
        rep.tamed_structure = da > 0.0 ? TamedStructure::Jplus : TamedStructure::Jminus;
        if (da == 0.0) rep.tamed_structure = TamedStructure::None;
    } else {
        rep.tamed_structure = TamedStructure::None;
    }
    return rep;
}

bool tame_pointwise(double c, const Vec3& alpha) { return norm(alpha) < std::abs(c); }

std::array<double, 6> ricci_operator_spectrum(const double lambda[4]) {
    for (int i = 0; i < 4; ++i)
        if (!std::isfinite(lambda[i]))
            fail(ErrorCode::NonFinite, "Ricci eigenvalues must be finite");
    const double s = lambda[0] + lambda[1] + lambda[2] + lambda[3];
    std::array<double, 6> out{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) out[k++] = 0.5 * (lambda[i] + lambda[j]) - s / 6.0;
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

bool bochner_condition(const CurvatureOperator& R) {
    const SymEigen e = sym_eigen(R.A);
    return e.values[0] + e.values[1] > 0.0;
}

DominanceReport eigen_sum_dominance(const Mat3& A_in, const Mat3& B_in) {
    const Mat3 A = symmetrize(A_in);
    const Mat3 B = symmetrize(B_in);

    DominanceReport rep;
    const SymEigen gap = sym_eigen(A * A - B * B);
    rep.holds_hypothesis = gap.values[0] > 0.0;

    const SymEigen ea = sym_eigen(A);
    const SymEigen eb = sym_eigen(B);
    for (int i = 0; i < 3; ++i) {
        rep.sum_abs_a += std::abs(ea.values[i]);
        rep.sum_abs_b += std::abs(eb.values[i]);
    }
    return rep;
}

RicciPositiveReport ricci_positive_check(const double lambda[4], const Mat3& Wplus) {
    const CurvatureOperator R = from_ricci_spectrum(lambda, Wplus, Mat3::zero());

    RicciPositiveReport rep;
    const SymEigen ed = sym_eigen(d_operator(R));
    const SymEigen ea = sym_eigen(R.A);
    rep.premises = ed.values[0] > 0.0 && ea.values[0] > 0.0;
    rep.min_lambda = std::min({lambda[0], lambda[1], lambda[2], lambda[3]});
    return rep;
}

namespace {

Mat3 random_symmetric(Rng& rng, double sigma) {
    Mat3 w;
    for (int i = 0; i < 9; ++i) w.m[i] = sigma * rng.gaussian();
    return symmetrize(w);
}

}  // namespace

SuiteReport run_dominance_suite(std::uint64_t n, std::uint64_t seed) {
    SuiteReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < n; ++i) {
        Rng rng = Rng::for_sample(seed, i);
        const Mat3 A = random_symmetric(rng, 1.0);
        Mat3 B = random_symmetric(rng, 1.0);

        // Scale B under the hypothesis: |Av| > |Bv| certainly holds once
        // max|eig B| < min|eig A|.
        const SymEigen ea = sym_eigen(A);
        const SymEigen eb = sym_eigen(B);
        const double amin = std::min(std::abs(ea.values[0]), std::abs(ea.values[2]));
        const double bmax = std::max(std::abs(eb.values[0]), std::abs(eb.values[2]));
        if (amin <= 1e-8 || bmax <= 1e-12) continue;
        B = B * (rng.uniform(0.2, 0.95) * amin / bmax);

        const DominanceReport d = eigen_sum_dominance(A, B);
        if (!d.holds_hypothesis) continue;
        ++rep.samples;
        const double gap = d.sum_abs_a - d.sum_abs_b;
        rep.worst_margin = std::min(rep.worst_margin, gap);
        if (gap <= 0.0) ++rep.counterexamples;
    }
    return rep;
}

SuiteReport run_ricci_positive_suite(std::uint64_t n, std::uint64_t seed) {
    SuiteReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    std::uint64_t drawn = 0;
    const std::uint64_t max_draws = 400 * n;
    while (rep.samples < n && drawn < max_draws) {
        Rng rng = Rng::for_sample(seed, drawn++);
        const double base = rng.uniform(0.2, 4.0);
        double lambda[4];
        for (double& l : lambda) l = base + 0.8 * base * rng.gaussian();
        const Mat3 Wp = random_symmetric(rng, 0.25 * base);

        RicciPositiveReport r;
        try {
            r = ricci_positive_check(lambda, Wp);
        } catch (const Error&) {
            continue;
        }
        if (!r.premises) continue;
        ++rep.samples;
        rep.worst_margin = std::min(rep.worst_margin, r.min_lambda);
        if (!(r.min_lambda > 0.0)) ++rep.counterexamples;
    }
    return rep;
}

SuiteReport run_trace_identity_suite(std::uint64_t n, std::uint64_t seed) {
    SuiteReport rep;
    rep.worst_margin = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        Rng rng = Rng::for_sample(seed, i);
        const double s = rng.uniform(-24.0, 24.0);
        Mat3 wp = random_symmetric(rng, 1.0);
        wp = wp - Mat3::identity() * (trace(wp) / 3.0);
        Mat3 wm = random_symmetric(rng, 1.0);
        wm = wm - Mat3::identity() * (trace(wm) / 3.0);
        Mat3 B;
        for (int k = 0; k < 9; ++k) B.m[k] = rng.gaussian();

        const CurvatureOperator R = make_operator(wp + Mat3::identity() * (s / 12.0), B,
                                                  wm + Mat3::identity() * (s / 12.0), false);
        const WeylScalarParts parts = decompose(R);
        const double lhs = trace(d_operator(R));
        const double wp2 = frobenius_norm(parts.Wplus);
        const double r02 = frobenius_norm(parts.ric0);
        const double rhs = wp2 * wp2 + parts.s * parts.s / 48.0 - r02 * r02;
        const double rel =
            std::abs(lhs - rhs) / std::max(1.0, std::max(std::abs(lhs), std::abs(rhs)));
        ++rep.samples;
        rep.worst_margin = std::max(rep.worst_margin, rel);
        if (rel > 1e-12) ++rep.counterexamples;
    }
    return rep;
}

const char* to_string(Verdict v) { return v == Verdict::Definite ? "Definite" : "Indefinite"; }
const char* to_string(Orientation o) {
    switch (o) {
        case Orientation::Same: return "Same";
        case Orientation::Opposite: return "Opposite";
        default: return "NA";
    }
}
const char* to_string(Sign s) {
    switch (s) {
        case Sign::Positive: return "Positive";
        case Sign::Negative: return "Negative";
        default: return "NA";
    }
}
const char* to_string(TamedStructure t) {
    switch (t) {
        case TamedStructure::Jplus: return "Jplus";
        case TamedStructure::Jminus: return "Jminus";
        default: return "None";
    }
}

}  // namespace defconn
