#pragma once

#include <functional>

#include "defconn/linalg.hpp"

// Algebraic curvature operators of oriented Riemannian four-manifolds in the
// self-dual / anti-self-dual block convention.
//
// Basis convention: Lambda^{+-} carry the orthonormal bases
//   (theta^0 ^ theta^i +- theta^j ^ theta^k) / sqrt(2),   (i,jk) = (1,23), (2,31), (3,12),
// for an oriented orthonormal coframe theta, with the Lambda^2 inner product
// normalized so that the bivectors theta^a ^ theta^b (a < b) are orthonormal.
// All block matrices below live in these fixed bases.

namespace defconn {

// Relative tolerance for exact-identity checks (Bianchi trace constraint).
inline constexpr double kIdentityTol = 1e-12;

// Block form of the curvature operator on Lambda^2 = Lambda^+ (+) Lambda^-:
//   [ A    B^T ]
//   [ B    C   ]
// A acts on Lambda^+, C on Lambda^-, and B maps Lambda^+ -> Lambda^-
// (the trace-free Ricci operator). A and C are symmetric by construction.
struct CurvatureOperator {
    Mat3 A;
    Mat3 B;
    Mat3 C;
    bool bianchi_relaxed = false;
};

// Trace decomposition: A = Wplus + (s/12) I, C = Wminus + (s/12) I for
// operators satisfying the trace constraint; on relaxed operators the scalar
// part averages the two block traces (s = 2(tr A + tr C)).
struct WeylScalarParts {
    Mat3 Wplus;   // trace-free
    Mat3 Wminus;  // trace-free
    Mat3 ric0;    // = B
    double s = 0.0;
};

// Radial profile with two derivatives, used for warped-product curvature
// (value, first and second derivative at r).
struct Profile {
    std::function<double(double)> f;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
};

// Symmetrizes A and C, checks finiteness, and enforces |tr A - tr C| <=
// 1e-12 * max(1, |tr A|) unless `relaxed`. Throws BianchiViolation / NonFinite.
CurvatureOperator make_operator(const Mat3& A, const Mat3& B, const Mat3& C, bool relaxed);

WeylScalarParts decompose(const CurvatureOperator& R);

// Scalar curvature, s = 2(tr A + tr C) (= 4 tr A when the trace constraint holds).
double scalar_curvature(const CurvatureOperator& R);

// Swap Lambda^+ <-> Lambda^-: (A, B, C) -> (C, B^T, A). Involution.
CurvatureOperator reverse_orientation(const CurvatureOperator& R);

// Curvature operator of a tensor that is diagonal in the coordinate-plane
// basis of an orthonormal coframe (theta^0..theta^3): the six inputs are the
// plane curvatures K(0i) and K(jk). Mixed components are assumed zero.
// Result: A = C = diag((K0i + Kjk)/2), B = diag((K0i - Kjk)/2).
CurvatureOperator from_sectional_diagonal(double K01, double K02, double K03, double K23,
                                          double K31, double K12);

// Curvature of the ramified-cover metric dr^2 + sigma(r)^2 dtheta^2 +
// cosh^2(r) g_{H^2} at radius r: plane curvatures
//   K(r, x_i) = -1,  K(x_1, x_2) = -1,
//   K(x_i, theta) = -(sigma'/sigma) tanh r,  K(r, theta) = -sigma''/sigma,
// assembled via from_sectional_diagonal. Throws DomainError if sigma(r) <= 0.
CurvatureOperator ramified_cover_operator(const Profile& sigma, double r);

// Curvature operator with prescribed Ricci eigenvalues lambda (sorted
// descending internally) and Weyl parts. The trace-free Ricci operator is
// diagonal in the paired bases built from the Ricci eigenvectors:
//   B = diag( (l1+l2-l3-l4)/4, (l1-l2+l3-l4)/4, (l1-l2-l3+l4)/4 ),
// s = sum lambda_i, A = Wplus + (s/12) I, C = Wminus + (s/12) I.
CurvatureOperator from_ricci_spectrum(const double lambda[4], const Mat3& Wplus,
                                      const Mat3& Wminus);

// sigma(r) = k sinh(r): hyperbolic-type profile with a cone rescaling.
Profile scaled_sinh_profile(double k);

}  // namespace defconn
