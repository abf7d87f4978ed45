#pragma once

#include <array>

#include "defconn/curvature.hpp"
#include "defconn/linalg.hpp"

// Definiteness of the induced connection on Lambda^+: the operator
// D = A^2 - B^T B decides it, with the sign read off a determinant.

namespace defconn {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr int kDefaultGridN = 64;
inline constexpr int kDefaultRefineIters = 50;

enum class Verdict { Indefinite, Definite };
enum class Orientation { Same, Opposite, NA };
enum class Sign { Positive, Negative, NA };
enum class TamedStructure { Jplus, Jminus, None };

struct DefiniteClassification {
    Verdict verdict = Verdict::Indefinite;
    int d_signature = 0;  // #positive - #negative eigenvalues of D
    Orientation orientation = Orientation::NA;
    Sign sign = Sign::NA;
    double margin = 0.0;  // min |eigenvalue of D|
    bool boundary = false;  // margin <= tol: degenerate boundary case
};

struct TamingReport {
    double margin = 0.0;  // min over unit v of |<Av,v>| - |Bv|
    TamedStructure tamed_structure = TamedStructure::None;
    Vec3 argmin_v{1.0, 0.0, 0.0};
};

// D = A^2 - B^T B, symmetric by construction.
Mat3 d_operator(const CurvatureOperator& R);

// Eigenvalue classification of D. Definite iff all eigenvalues clear `tol`
// on one side; margin <= tol reports the degenerate boundary. In the
// positive branch the sign is sign(det A); in the negative branch sign(det B),
// both taken in the fixed oriented bases of Lambda^{+-}.
DefiniteClassification classify(const CurvatureOperator& R, double tol = kDefaultTol);

// Minimizes g(v) = |<Av,v>| - |Bv| over the unit sphere in Lambda^+ by a
// deterministic golden-spiral grid of grid_n^2 points followed by projected
// coordinate descent. margin > tol together with det A > 0 (< 0) reports a
// tamed structure Jplus (Jminus).
TamingReport taming_margin(const CurvatureOperator& R, int grid_n = kDefaultGridN,
                           int refine_iters = kDefaultRefineIters, double tol = kDefaultTol);

// Pointwise taming of a constant-coefficient pair: a self-dual component of
// size |c| against an anti-self-dual perturbation alpha. True iff |alpha| < |c|.
bool tame_pointwise(double c, const Vec3& alpha);

// The six eigenvalues (lambda_i + lambda_j)/2 - s/6 (i < j) of the Ricci
// operator on Lambda^2, for Ricci-curvature eigenvalues lambda; s = sum.
// Sorted descending.
std::array<double, 6> ricci_operator_spectrum(const double lambda[4]);

// True iff the two smallest eigenvalues of A sum to > 0 (the vanishing
// condition for harmonic self-dual 2-forms on a compact manifold).
bool bochner_condition(const CurvatureOperator& R);

struct DominanceReport {
    bool holds_hypothesis = false;  // A^2 - B^2 positive definite
    double sum_abs_a = 0.0;
    double sum_abs_b = 0.0;
};

// For symmetric A, B: hypothesis |Av| > |Bv| for all v != 0 (equivalently
// A^2 - B^2 > 0) and the two absolute eigenvalue sums it compares.
DominanceReport eigen_sum_dominance(const Mat3& A, const Mat3& B);

struct RicciPositiveReport {
    bool premises = false;  // D > 0 and A > 0
    double min_lambda = 0.0;
};

// Assembles the operator with the given Ricci eigenvalues and Wminus = 0 and
// checks the premises D > 0, A > 0; premises imply min lambda_i > 0.
RicciPositiveReport ricci_positive_check(const double lambda[4], const Mat3& Wplus);

// Randomized verification suites (seeded, deterministic).

struct SuiteReport {
    std::uint64_t samples = 0;        // samples actually tested
    std::uint64_t counterexamples = 0;
    double worst_margin = 0.0;        // most adverse margin seen (sign convention per suite)
};

// Pairs (A, B) with |Av| > |Bv| for all v != 0 must satisfy
// sum |eig A| > sum |eig B|.
SuiteReport run_dominance_suite(std::uint64_t n, std::uint64_t seed);

// Operators assembled from Ricci eigenvalues and Wplus with D > 0 and A > 0
// must have all Ricci eigenvalues positive.
SuiteReport run_ricci_positive_suite(std::uint64_t n, std::uint64_t seed);

// tr D = |Wplus|^2 + s^2/48 - |ric0|^2 on trace-constrained operators;
// worst_margin reports the largest relative error.
SuiteReport run_trace_identity_suite(std::uint64_t n, std::uint64_t seed);

const char* to_string(Verdict v);
const char* to_string(Orientation o);
const char* to_string(Sign s);
const char* to_string(TamedStructure t);

}  // namespace defconn
