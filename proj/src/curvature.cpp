#include "defconn/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "defconn/errors.hpp"

namespace defconn {

CurvatureOperator make_operator(const Mat3& A, const Mat3& B, const Mat3& C, bool relaxed) {
    if (!all_finite(A) || !all_finite(B) || !all_finite(C))
        fail(ErrorCode::NonFinite, "curvature blocks must be finite");

    CurvatureOperator R;
    R.A = symmetrize(A);
    R.B = B;
    R.C = symmetrize(C);
    R.bianchi_relaxed = relaxed;

    if (!relaxed) {
        const double ta = trace(R.A);
        const double tc = trace(R.C);
        if (std::abs(ta - tc) > kIdentityTol * std::max(1.0, std::abs(ta)))
            fail(ErrorCode::BianchiViolation,
                 "trace constraint violated: tr A = " + std::to_string(ta) +
                     ", tr C = " + std::to_string(tc));
    }
    return R;
}

WeylScalarParts decompose(const CurvatureOperator& R) {
    WeylScalarParts p;
    const double ta = trace(R.A);
    const double tc = trace(R.C);
    p.s = 2.0 * (ta + tc);
    p.Wplus = R.A - Mat3::identity() * (ta / 3.0);
    p.Wminus = R.C - Mat3::identity() * (tc / 3.0);
    p.ric0 = R.B;
    return p;
}

double scalar_curvature(const CurvatureOperator& R) {
    return 2.0 * (trace(R.A) + trace(R.C));
}

CurvatureOperator reverse_orientation(const CurvatureOperator& R) {
    CurvatureOperator out;
    out.A = R.C;
    out.B = transpose(R.B);
    out.C = R.A;
    out.bianchi_relaxed = R.bianchi_relaxed;
    return out;
}

CurvatureOperator from_sectional_diagonal(double K01, double K02, double K03, double K23,
                                          double K31, double K12) {
    const double k[6] = {K01, K02, K03, K23, K31, K12};
    for (double x : k)
        if (!std::isfinite(x)) fail(ErrorCode::NonFinite, "sectional inputs must be finite");

    const Mat3 A = Mat3::diag(0.5 * (K01 + K23), 0.5 * (K02 + K31), 0.5 * (K03 + K12));
    const Mat3 B = Mat3::diag(0.5 * (K01 - K23), 0.5 * (K02 - K31), 0.5 * (K03 - K12));
    // tr A = tr C holds automatically here.
    return make_operator(A, B, A, false);
}

CurvatureOperator ramified_cover_operator(const Profile& sigma, double r) {
    if (!(r > 0.0)) fail(ErrorCode::DomainError, "radius must be positive");
    const double s0 = sigma.f(r);
    if (!(s0 > 0.0)) fail(ErrorCode::DomainError, "profile must be positive at r");
    const double s1 = sigma.d1(r);
    const double s2 = sigma.d2(r);

    // Coframe order (theta^0..theta^3) = (dr, dx1, dx2, dtheta)-orthonormal.
    const double k_fiber = -(s1 / s0) * std::tanh(r);
    const double k_radial = -s2 / s0;
    return from_sectional_diagonal(/*K01*/ -1.0, /*K02*/ -1.0, /*K03*/ k_radial,
                                   /*K23*/ k_fiber, /*K31*/ k_fiber, /*K12*/ -1.0);
}

CurvatureOperator from_ricci_spectrum(const double lambda_in[4], const Mat3& Wplus,
                                      const Mat3& Wminus) {
    double l[4] = {lambda_in[0], lambda_in[1], lambda_in[2], lambda_in[3]};
    for (double x : l)
        if (!std::isfinite(x)) fail(ErrorCode::NonFinite, "Ricci eigenvalues must be finite");
    if (!all_finite(Wplus) || !all_finite(Wminus))
        fail(ErrorCode::NonFinite, "Weyl parts must be finite");

    std::sort(l, l + 4, std::greater<double>());
    const double s = l[0] + l[1] + l[2] + l[3];

    const Mat3 B = Mat3::diag(0.25 * (l[0] + l[1] - l[2] - l[3]),
                              0.25 * (l[0] - l[1] + l[2] - l[3]),
                              0.25 * (l[0] - l[1] - l[2] + l[3]));

    auto trace_free = [](const Mat3& w) {
        const Mat3 sym = symmetrize(w);
        return sym - Mat3::identity() * (trace(sym) / 3.0);
    };
    const Mat3 A = trace_free(Wplus) + Mat3::identity() * (s / 12.0);
    const Mat3 C = trace_free(Wminus) + Mat3::identity() * (s / 12.0);
    return make_operator(A, B, C, false);
}

Profile scaled_sinh_profile(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorCode::BadParams, "profile scale must be positive");
    Profile p;
    p.f = [k](double r) { return k * std::sinh(r); };
    p.d1 = [k](double r) { return k * std::cosh(r); };
    p.d2 = [k](double r) { return k * std::sinh(r); };
    return p;
}

}  // namespace defconn
