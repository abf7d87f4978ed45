#include "defconn/sectional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "defconn/errors.hpp"

namespace defconn {

double sectional_value(const CurvatureOperator& R, const Vec3& u, const Vec3& v) {
    if (std::abs(norm(u) - 1.0) > 1e-10 || std::abs(norm(v) - 1.0) > 1e-10)
        fail(ErrorCode::NotUnit, "sectional arguments must be unit vectors");
    return dot(R.A * u, u) + 2.0 * dot(R.B * u, v) + dot(R.C * v, v);
}

namespace {

inline double sec_raw(const CurvatureOperator& R, const Vec3& u, const Vec3& v) {
    return dot(R.A * u, u) + 2.0 * dot(R.B * u, v) + dot(R.C * v, v);
}

}  // namespace

double sphere_quadratic_max(const Mat3& C, const Vec3& b, Vec3& argmax) {
    const SymEigen e = sym_eigen(C);
    const double c_top = e.values[2];
    const Vec3 beta{dot(e.vectors[0], b), dot(e.vectors[1], b), dot(e.vectors[2], b)};

    auto assemble = [&](double l0, double l1, double l2) {
        return e.vectors[0] * l0 + e.vectors[1] * l1 + e.vectors[2] * l2;
    };
    auto norm2_at = [&](double lam) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double d = lam - e.values[i];
            s += (beta[i] * beta[i]) / (d * d);
        }
        return s;
    };

    const double scale = std::max({1.0, std::abs(c_top), norm(b)});
    const double lo0 = c_top + 1e-14 * scale;

    if (norm2_at(lo0) < 1.0) {
        // Degenerate direction: the multiplier sits at the top eigenvalue and
        // the solution fills up with the top eigenvector.
        double coeff[3] = {0.0, 0.0, 0.0};
        double n2 = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double d = c_top - e.values[i];
            if (d > 1e-14 * scale) {
                coeff[i] = beta[i] / d;
                n2 += coeff[i] * coeff[i];
            }
        }
        const double t = std::sqrt(std::max(0.0, 1.0 - n2));
        Vec3 v = assemble(coeff[0], coeff[1], coeff[2]) + e.vectors[2] * t;
        Vec3 valt = assemble(coeff[0], coeff[1], coeff[2]) - e.vectors[2] * t;
        const double q1 = dot(C * v, v) + 2.0 * dot(b, v);
        const double q2 = dot(C * valt, valt) + 2.0 * dot(b, valt);
        argmax = normalized(q1 >= q2 ? v : valt);
        return std::max(q1, q2);
    }

    double lo = lo0;
    double hi = c_top + norm(b) + scale;
    while (norm2_at(hi) >= 1.0) hi = c_top + 2.0 * (hi - c_top);
    for (int it = 0; it < 160; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (norm2_at(mid) >= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    const double lam = 0.5 * (lo + hi);
    Vec3 v = assemble(beta[0] / (lam - e.values[0]), beta[1] / (lam - e.values[1]),
                      beta[2] / (lam - e.values[2]));
    argmax = normalized(v);
    return dot(C * argmax, argmax) + 2.0 * dot(b, argmax);
}

namespace {

// Exact alternating ascent for max (mode = +1) or min (mode = -1): each half
// step solves its sphere-constrained quadratic exactly, so the iteration is
// monotone and typically converges in a handful of steps.
double alternate_extremum(const CurvatureOperator& R, Vec3& u, Vec3& v, int iters, int mode) {
    const Mat3 Bt = transpose(R.B);
    const Mat3 A = (mode > 0) ? R.A : R.A * -1.0;
    const Mat3 C = (mode > 0) ? R.C : R.C * -1.0;
    const Mat3 B = (mode > 0) ? R.B : R.B * -1.0;
    const Mat3 BtM = (mode > 0) ? Bt : Bt * -1.0;

    double best = mode * sec_raw(R, u, v);
    Vec3 best_u = u, best_v = v;
    for (int it = 0; it < iters; ++it) {
        Vec3 vn;
        sphere_quadratic_max(C, B * u, vn);
        Vec3 un;
        sphere_quadratic_max(A, BtM * vn, un);
        const double val = mode * sec_raw(R, un, vn);
        u = un;
        v = vn;
        const bool stalled = val <= best + 1e-15 * (1.0 + std::abs(best));
        if (val > best) {
            best = val;
            best_u = un;
            best_v = vn;
        }
        if (stalled) break;
    }
    u = best_u;
    v = best_v;
    return mode * best;
}

struct ExtremumSearch {
    double min_sec, max_sec;
    Vec3 u_min, v_min, u_max, v_max;
};

ExtremumSearch search_extrema(const CurvatureOperator& R, int grid_n, int refine_iters) {
    const int n_pts = grid_n * grid_n;
    const auto lattice = fibonacci_sphere(n_pts);

    // Precompute per-point pieces so the product scan is cheap.
    std::vector<double> qa(n_pts), qc(n_pts);
    std::vector<Vec3> bu(n_pts);
    for (int i = 0; i < n_pts; ++i) {
        const Vec3& p = lattice[i];
        qa[i] = dot(R.A * p, p);
        qc[i] = dot(R.C * p, p);
        bu[i] = R.B * p;
    }

    double lo = qa[0] + 2.0 * dot(bu[0], lattice[0]) + qc[0], hi = lo;
    int lo_i = 0, lo_j = 0, hi_i = 0, hi_j = 0;
    for (int i = 0; i < n_pts; ++i) {
        for (int j = 0; j < n_pts; ++j) {
            const double s = qa[i] + 2.0 * dot(bu[i], lattice[j]) + qc[j];
            if (s < lo) {
                lo = s;
                lo_i = i;
                lo_j = j;
            }
            if (s > hi) {
                hi = s;
                hi_i = i;
                hi_j = j;
            }
        }
    }

    ExtremumSearch out;
    out.u_min = lattice[lo_i];
    out.v_min = lattice[lo_j];
    out.u_max = lattice[hi_i];
    out.v_max = lattice[hi_j];

    // Seeds: the lattice winners and the eigenvector pairs of A.
    const SymEigen ea = sym_eigen(R.A);
    auto run = [&](int mode, Vec3& u_best, Vec3& v_best) {
        double best = sec_raw(R, u_best, v_best);
        for (int k = -1; k < 3; ++k) {
            Vec3 u = (k < 0) ? (mode > 0 ? out.u_max : out.u_min) : ea.vectors[k];
            Vec3 v = (k < 0) ? (mode > 0 ? out.v_max : out.v_min) : Vec3{0, 0, 1};
            const double val = alternate_extremum(R, u, v, refine_iters, mode);
            if ((mode > 0 && val > best) || (mode < 0 && val < best)) {
                best = val;
                u_best = u;
                v_best = v;
            }
        }
        return best;
    };

    out.max_sec = run(+1, out.u_max, out.v_max);
    out.min_sec = run(-1, out.u_min, out.v_min);
    return out;
}

}  // namespace

PinchingReport sectional_extrema(const CurvatureOperator& R, int grid_n, int refine_iters) {
    if (grid_n < 16) fail(ErrorCode::InvalidArgument, "sectional grid_n must be >= 16");

    const ExtremumSearch s = search_extrema(R, grid_n, refine_iters);
    PinchingReport rep;
    rep.min_sec = s.min_sec;
    rep.max_sec = s.max_sec;
    rep.u_min = s.u_min;
    rep.v_min = s.v_min;
    rep.u_max = s.u_max;
    rep.v_max = s.v_max;
    rep.sign_uniform = (s.min_sec > 0.0 && s.max_sec > 0.0) || (s.min_sec < 0.0 && s.max_sec < 0.0);
    if (rep.sign_uniform) {
        const double lo = std::min(std::abs(s.min_sec), std::abs(s.max_sec));
        const double hi = std::max(std::abs(s.min_sec), std::abs(s.max_sec));
        rep.ratio = lo / hi;
    }

    const double sc = scalar_curvature(R);
    if (sc != 0.0) {
        const double c = 12.0 / sc;
        const SymEigen ea = sym_eigen(R.A * c);
        const SymEigen ec = sym_eigen(R.C * c);
        PinchingOffsets off;
        off.a1 = ea.values[2] - 1.0;
        off.a2 = 1.0 - ea.values[0];
        off.c1 = ec.values[2] - 1.0;
        off.c2 = 1.0 - ec.values[0];
        rep.offsets = off;
    }
    return rep;
}

std::optional<double> pinching_ratio(const CurvatureOperator& R) {
    return sectional_extrema(R).ratio;
}

CurvatureOperator sample_operator(Rng& rng, double sigma) {
    const double s = rng.uniform(-24.0, 24.0);
    auto random_tracefree_sym = [&]() {
        Mat3 w;
        for (int i = 0; i < 9; ++i) w.m[i] = sigma * rng.gaussian();
        w = symmetrize(w);
        return w - Mat3::identity() * (trace(w) / 3.0);
    };
    Mat3 B;
    for (int i = 0; i < 9; ++i) B.m[i] = sigma * rng.gaussian();

    const Mat3 scalar_part = Mat3::identity() * (s / 12.0);
    return make_operator(random_tracefree_sym() + scalar_part, B,
                         random_tracefree_sym() + scalar_part, false);
}

namespace {

std::string serialize_blocks(const CurvatureOperator& R) {
    std::ostringstream os;
    os.precision(17);
    os << "A=[";
    for (int i = 0; i < 9; ++i) os << R.A.m[i] << (i < 8 ? "," : "]");
    os << " B=[";
    for (int i = 0; i < 9; ++i) os << R.B.m[i] << (i < 8 ? "," : "]");
    os << " C=[";
    for (int i = 0; i < 9; ++i) os << R.C.m[i] << (i < 8 ? "," : "]");
    return os.str();
}

}  // namespace

VerifyReport run_pinching_verification(const VerifyOptions& opt) {
    if (opt.n_kept < 1) fail(ErrorCode::InvalidArgument, "n_kept must be >= 1");

    VerifyReport rep;
    rep.min_d_margin = std::numeric_limits<double>::infinity();
    rep.min_strengthened_margin = std::numeric_limits<double>::infinity();

    const std::uint64_t max_draws =
        opt.max_draws ? opt.max_draws : 1000ULL * static_cast<std::uint64_t>(opt.n_kept);
    const auto grid = fibonacci_sphere(opt.strengthened_grid_n * opt.strengthened_grid_n);

    for (std::uint64_t i = 0; i < max_draws && rep.kept < static_cast<std::uint64_t>(opt.n_kept);
         ++i) {
        Rng rng = Rng::for_sample(opt.seed, i);
        const CurvatureOperator R = sample_operator(rng, opt.sigma);
        ++rep.drawn;

        // Cheap necessary bounds: min sec <= lambda_min(A) + lambda_min(C),
        // max sec >= lambda_max(A) + lambda_max(C).
        const SymEigen ea = sym_eigen(R.A);
        const SymEigen ec = sym_eigen(R.C);
        const double lo_bound = ea.values[0] + ec.values[0];
        const double hi_bound = ea.values[2] + ec.values[2];
        if (lo_bound <= 0.0 && hi_bound >= 0.0) continue;
        const double ub = std::min(std::abs(lo_bound), std::abs(hi_bound)) /
                          std::max(std::abs(lo_bound), std::abs(hi_bound));
        if (ub <= 0.4) continue;

        const PinchingReport pr = sectional_extrema(R, opt.filter_grid_n, opt.filter_refine);
        if (!pr.sign_uniform || !pr.ratio || *pr.ratio <= 0.4) continue;
        ++rep.kept;

        bool bad = false;

        // Both-orientation definiteness of D.
        for (const CurvatureOperator& S : {R, reverse_orientation(R)}) {
            const Mat3 D = d_operator(S);
            const SymEigen ed = sym_eigen(D);
            const double atol = 1e-10 * std::max(1.0, frobenius_norm(D));
            rep.min_d_margin = std::min(rep.min_d_margin, ed.values[0]);
            if (ed.values[0] < -atol) bad = true;
        }

        if (opt.strengthened) {
            const Mat3 Bt = transpose(R.B);
            double m = std::numeric_limits<double>::infinity();
            for (const Vec3& p : grid) {
                m = std::min(m, std::abs(dot(R.A * p, p)) - norm(R.B * p));
                m = std::min(m, std::abs(dot(R.C * p, p)) - norm(Bt * p));
            }
            rep.min_strengthened_margin = std::min(rep.min_strengthened_margin, m);
            const double atol =
                1e-10 * std::max({1.0, frobenius_norm(R.A), frobenius_norm(R.B)});
            if (m < -atol) bad = true;
        }

        if (bad) {
            ++rep.violations;
            if (rep.first_violation.empty()) rep.first_violation = serialize_blocks(R);
        }
    }
    return rep;
}

VerifyReport verify_pinching_theorem(int n_samples, std::uint64_t seed, bool strengthened) {
    VerifyOptions opt;
    opt.n_kept = n_samples;
    opt.seed = seed;
    opt.strengthened = strengthened;
    const VerifyReport rep = run_pinching_verification(opt);
    if (rep.violations > 0)
        fail(ErrorCode::TheoremViolation,
             "pinched operator with indefinite connection: " + rep.first_violation);
    return rep;
}

}  // namespace defconn
