#pragma once

#include <string>
#include <vector>

#include "defconn/curvature.hpp"
#include "defconn/linalg.hpp"

// Cohomogeneity-one metrics dr^2 + sum_i f_i(r)^2 e_i^2 on R x SU(2) with
// left-invariant coframe e_i (d e_1 = e_2 ^ e_3 and cyclic), the induced
// radial paths of connection coefficients on Lambda^{+-},
//     nabla = d + sum_i a_i(r) e_i (x) eps_i,
//     a_i = -+ f_i'/2 + (f_i^2 - f_j^2 - f_k^2) / (2 f_j f_k),
// (upper sign for Lambda^+), the definite-path criterion, and curvature-block
// reconstruction.

namespace defconn {

enum class Bundle { LambdaPlus, LambdaMinus, Direct };

struct PathPoint {
    double a[3];
    double aprime[3];
};

struct MetricFamily {
    Profile f[3];
    double r_min = 0.0;
    double r_max = 8.0;
    std::string name;
    // Closed-form path coefficients for the built-in families ([0] plus,
    // [1] minus); when absent the coefficients are assembled from f, f', f''.
    std::function<PathPoint(double)> closed_path[2];
};

struct ConnectionPath {
    Bundle bundle = Bundle::Direct;
    double r_min = 0.0;
    double r_max = 8.0;
    std::function<PathPoint(double)> eval;
};

struct PathVerdict {
    bool definite = false;
    int common_sign = 0;  // +1 / -1 / 0
    double margin = 0.0;  // min over grid and i of |q_i|, q_i = a_i'(a_i + a_j a_k)
};

// Splitting weights and column signs tying the trivialized-frame curvature of
// the two bundle paths to the operator blocks; fixed by requiring ric0 = 0
// and the correct scalar-curvature sign on the constant-curvature families,
// then validated on the Einstein self-dual ones.
struct CalibrationConstants {
    double sd_weight = 2.0;         // coefficient of a_i'/f_i
    double asd_weight = 4.0;        // coefficient of (a_i + a_j a_k)/(f_j f_k)
    double plus_column_sign = -1.0;   // (A, B) column, from the Lambda^- path
    double minus_column_sign = 1.0;   // (C, B^T) column, from the Lambda^+ path
};

// Built-in families: "S4", "H4", "CP2", "CH2", "On" (param n >= 1).
MetricFamily builtin_family(const std::string& name, int n = 0);

// Tabulated family on a uniform r-grid; derivatives by central finite
// differences with step h (h must match the table spacing).
MetricFamily table_family(const std::vector<double>& r, const std::vector<double>& f1,
                          const std::vector<double>& f2, const std::vector<double>& f3,
                          double fd_step);

// The ramified-cover profile: sigma = sinh r inside the blend window,
// k sinh r beyond it, joined by a quintic with matched value and two
// derivatives; construction is rejected unless sigma' > 0 and sigma'' > 0
// hold on the blend (so all plane curvatures stay negative).
Profile gromov_thurston_profile(int k, double r0, double blend_lo = 0.0, double blend_hi = 0.0);

ConnectionPath connection_path(const MetricFamily& fam, Bundle bundle);

// Linear isotopy between the constant-curvature and complex-hyperbolic
// Lambda^+ paths: t = 0 gives all a_i = -(cosh r + 1)/2, t = 1 gives
// a_1 = -(cosh^2 r + 1)/2, a_2 = a_3 = -cosh r.
ConnectionPath isotopy_path(double t);

PathVerdict definite_path_margin(const ConnectionPath& path, const std::vector<double>& r_grid);

// Default evaluation grid: n points on [max(0.05, r_min), min(8, r_max)],
// clamped away from the coordinate degeneracies of the family.
std::vector<double> default_r_grid(const MetricFamily& fam, int n = 160);
std::vector<double> default_r_grid(const ConnectionPath& path, int n = 160);

// Curvature blocks of the family metric at radius r, assembled from the two
// bundle paths re-expressed in the orthonormal coframe (dr, f_i e_i) and
// split into self-dual / anti-self-dual parts with the calibrated weights.
CurvatureOperator reconstruct_blocks(const MetricFamily& fam, double r,
                                     const CalibrationConstants& calib = {});

}  // namespace defconn
