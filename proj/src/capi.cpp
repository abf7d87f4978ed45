#include "defconn.h"

#include <cstring>
#include <new>
#include <string>

#include "defconn/classify.hpp"
#include "defconn/cohom.hpp"
#include "defconn/curvature.hpp"
#include "defconn/errors.hpp"
#include "defconn/json_io.hpp"
#include "defconn/sectional.hpp"
#include "defconn/topology.hpp"
#include "defconn/version.hpp"

using namespace defconn;

struct defconn_operator {
    CurvatureOperator op;
};
struct defconn_family {
    MetricFamily fam;
};
struct defconn_path {
    ConnectionPath path;
};
struct defconn_profile {
    Profile prof;
};

namespace {

thread_local std::string g_last_error;

defconn_status to_status(const Error& e) {
    switch (e.code()) {
        case ErrorCode::InvalidArgument: return DEFCONN_ERR_INVALID_ARG;
        case ErrorCode::NonFinite: return DEFCONN_ERR_NONFINITE;
        case ErrorCode::BianchiViolation: return DEFCONN_ERR_BIANCHI;
        case ErrorCode::NotUnit: return DEFCONN_ERR_NOT_UNIT;
        case ErrorCode::DomainError: return DEFCONN_ERR_DOMAIN;
        case ErrorCode::BadParams: return DEFCONN_ERR_BAD_PARAMS;
        case ErrorCode::OutOfRange: return DEFCONN_ERR_OUT_OF_RANGE;
        case ErrorCode::ParseError: return DEFCONN_ERR_PARSE;
        case ErrorCode::TheoremViolation: return DEFCONN_ERR_THEOREM_VIOLATION;
    }
    return DEFCONN_ERR_INTERNAL;
}

template <typename Fn>
defconn_status guarded(Fn&& fn) {
    try {
        fn();
        return DEFCONN_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DEFCONN_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return DEFCONN_ERR_INTERNAL;
    }
}

Mat3 mat_of(const double m[9]) {
    Mat3 r;
    std::memcpy(r.m, m, 9 * sizeof(double));
    return r;
}
void mat_out(const Mat3& m, double out[9]) { std::memcpy(out, m.m, 9 * sizeof(double)); }

int verdict_code(Verdict v) {
    return v == Verdict::Definite ? DEFCONN_VERDICT_DEFINITE : DEFCONN_VERDICT_INDEFINITE;
}
int orientation_code(Orientation o) {
    switch (o) {
        case Orientation::Same: return DEFCONN_ORIENT_SAME;
        case Orientation::Opposite: return DEFCONN_ORIENT_OPPOSITE;
        default: return DEFCONN_ORIENT_NA;
    }
}
int sign_code(Sign s) {
    switch (s) {
        case Sign::Positive: return DEFCONN_SIGN_POSITIVE;
        case Sign::Negative: return DEFCONN_SIGN_NEGATIVE;
        default: return DEFCONN_SIGN_NA;
    }
}
int tamed_code(TamedStructure t) {
    switch (t) {
        case TamedStructure::Jplus: return DEFCONN_TAMED_JPLUS;
        case TamedStructure::Jminus: return DEFCONN_TAMED_JMINUS;
        default: return DEFCONN_TAMED_NONE;
    }
}

char* dup_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

defconn_status require(bool cond, const char* msg) {
    if (!cond) {
        g_last_error = msg;
        return DEFCONN_ERR_INVALID_ARG;
    }
    return DEFCONN_OK;
}

}  // namespace

extern "C" {

const char* defconn_version(void) { return kVersion; }
const char* defconn_last_error(void) { return g_last_error.c_str(); }
void defconn_string_free(char* s) { delete[] s; }

defconn_status defconn_operator_from_blocks(const double A[9], const double B[9],
                                            const double C[9], int relaxed,
                                            defconn_operator** out) {
    if (auto st = require(A && B && C && out, "null argument")) return st;
    return guarded([&] {
        *out = new defconn_operator{make_operator(mat_of(A), mat_of(B), mat_of(C), relaxed != 0)};
    });
}

defconn_status defconn_operator_from_sectional(const double K[6], defconn_operator** out) {
    if (auto st = require(K && out, "null argument")) return st;
    return guarded([&] {
        *out = new defconn_operator{from_sectional_diagonal(K[0], K[1], K[2], K[3], K[4], K[5])};
    });
}

defconn_status defconn_operator_from_ricci_spectrum(const double lambda[4], const double Wplus[9],
                                                    const double Wminus[9],
                                                    defconn_operator** out) {
    if (auto st = require(lambda && out, "null argument")) return st;
    return guarded([&] {
        const Mat3 wp = Wplus ? mat_of(Wplus) : Mat3::zero();
        const Mat3 wm = Wminus ? mat_of(Wminus) : Mat3::zero();
        *out = new defconn_operator{from_ricci_spectrum(lambda, wp, wm)};
    });
}

defconn_status defconn_operator_reverse(const defconn_operator* op, defconn_operator** out) {
    if (auto st = require(op && out, "null argument")) return st;
    return guarded([&] { *out = new defconn_operator{reverse_orientation(op->op)}; });
}

defconn_status defconn_operator_blocks(const defconn_operator* op, double A[9], double B[9],
                                       double C[9]) {
    if (auto st = require(op && A && B && C, "null argument")) return st;
    mat_out(op->op.A, A);
    mat_out(op->op.B, B);
    mat_out(op->op.C, C);
    return DEFCONN_OK;
}

defconn_status defconn_operator_decompose(const defconn_operator* op, double Wplus[9],
                                          double Wminus[9], double ric0[9], double* s) {
    if (auto st = require(op && Wplus && Wminus && ric0 && s, "null argument")) return st;
    return guarded([&] {
        const WeylScalarParts p = decompose(op->op);
        mat_out(p.Wplus, Wplus);
        mat_out(p.Wminus, Wminus);
        mat_out(p.ric0, ric0);
        *s = p.s;
    });
}

defconn_status defconn_operator_d_matrix(const defconn_operator* op, double D[9]) {
    if (auto st = require(op && D, "null argument")) return st;
    return guarded([&] { mat_out(d_operator(op->op), D); });
}

void defconn_operator_destroy(defconn_operator* op) { delete op; }

defconn_status defconn_classify(const defconn_operator* op, double tol,
                                defconn_classification* out) {
    if (auto st = require(op && out, "null argument")) return st;
    return guarded([&] {
        const DefiniteClassification c = classify(op->op, tol);
        out->verdict = verdict_code(c.verdict);
        out->d_signature = c.d_signature;
        out->orientation = orientation_code(c.orientation);
        out->sign = sign_code(c.sign);
        out->margin = c.margin;
        out->boundary = c.boundary ? 1 : 0;
    });
}

defconn_status defconn_taming_margin(const defconn_operator* op, int grid_n, int refine_iters,
                                     double tol, defconn_taming_report* out) {
    if (auto st = require(op && out, "null argument")) return st;
    return guarded([&] {
        const TamingReport t = taming_margin(op->op, grid_n, refine_iters, tol);
        out->margin = t.margin;
        out->tamed_structure = tamed_code(t.tamed_structure);
        for (int i = 0; i < 3; ++i) out->argmin_v[i] = t.argmin_v[i];
    });
}

defconn_status defconn_tame_pointwise(double c, const double alpha[3], int* out) {
    if (auto st = require(alpha && out, "null argument")) return st;
    *out = tame_pointwise(c, Vec3{alpha[0], alpha[1], alpha[2]}) ? 1 : 0;
    return DEFCONN_OK;
}

defconn_status defconn_ricci_operator_spectrum(const double lambda[4], double out[6]) {
    if (auto st = require(lambda && out, "null argument")) return st;
    return guarded([&] {
        const auto v = ricci_operator_spectrum(lambda);
        for (int i = 0; i < 6; ++i) out[i] = v[i];
    });
}

defconn_status defconn_bochner_condition(const defconn_operator* op, int* out) {
    if (auto st = require(op && out, "null argument")) return st;
    *out = bochner_condition(op->op) ? 1 : 0;
    return DEFCONN_OK;
}

defconn_status defconn_eigen_sum_dominance(const double A[9], const double B[9],
                                           int* holds_hypothesis, double* sum_abs_a,
                                           double* sum_abs_b) {
    if (auto st = require(A && B && holds_hypothesis && sum_abs_a && sum_abs_b, "null argument"))
        return st;
    return guarded([&] {
        const DominanceReport d = eigen_sum_dominance(mat_of(A), mat_of(B));
        *holds_hypothesis = d.holds_hypothesis ? 1 : 0;
        *sum_abs_a = d.sum_abs_a;
        *sum_abs_b = d.sum_abs_b;
    });
}

defconn_status defconn_ricci_positive_check(const double lambda[4], const double Wplus[9],
                                            int* premises, double* min_lambda) {
    if (auto st = require(lambda && premises && min_lambda, "null argument")) return st;
    return guarded([&] {
        const Mat3 wp = Wplus ? mat_of(Wplus) : Mat3::zero();
        const RicciPositiveReport r = ricci_positive_check(lambda, wp);
        *premises = r.premises ? 1 : 0;
        *min_lambda = r.min_lambda;
    });
}

defconn_status defconn_sectional_value(const defconn_operator* op, const double u[3],
                                       const double v[3], double* out) {
    if (auto st = require(op && u && v && out, "null argument")) return st;
    return guarded([&] {
        *out = sectional_value(op->op, Vec3{u[0], u[1], u[2]}, Vec3{v[0], v[1], v[2]});
    });
}

defconn_status defconn_sectional_extrema(const defconn_operator* op, int grid_n,
                                         int refine_iters, defconn_pinching_report* out) {
    if (auto st = require(op && out, "null argument")) return st;
    return guarded([&] {
        const PinchingReport p = sectional_extrema(op->op, grid_n, refine_iters);
        out->min_sec = p.min_sec;
        out->max_sec = p.max_sec;
        out->ratio_defined = p.ratio.has_value() ? 1 : 0;
        out->ratio = p.ratio.value_or(0.0);
        out->sign_uniform = p.sign_uniform ? 1 : 0;
        for (int i = 0; i < 3; ++i) {
            out->u_min[i] = p.u_min[i];
            out->v_min[i] = p.v_min[i];
            out->u_max[i] = p.u_max[i];
            out->v_max[i] = p.v_max[i];
        }
        out->offsets_defined = p.offsets.has_value() ? 1 : 0;
        out->a1 = p.offsets ? p.offsets->a1 : 0.0;
        out->a2 = p.offsets ? p.offsets->a2 : 0.0;
        out->c1 = p.offsets ? p.offsets->c1 : 0.0;
        out->c2 = p.offsets ? p.offsets->c2 : 0.0;
    });
}

defconn_status defconn_verify_pinching(int n_samples, uint64_t seed, int strengthened,
                                       defconn_verify_report* out) {
    if (auto st = require(out != nullptr, "null argument")) return st;
    return guarded([&] {
        const VerifyReport r = verify_pinching_theorem(n_samples, seed, strengthened != 0);
        out->drawn = r.drawn;
        out->kept = r.kept;
        out->violations = r.violations;
        out->min_d_margin = r.min_d_margin;
        out->min_strengthened_margin = r.min_strengthened_margin;
    });
}

defconn_status defconn_profile_scaled_sinh(double k, defconn_profile** out) {
    if (auto st = require(out != nullptr, "null argument")) return st;
    return guarded([&] { *out = new defconn_profile{scaled_sinh_profile(k)}; });
}

defconn_status defconn_profile_gromov_thurston(int k, double r0, double blend_lo,
                                               double blend_hi, defconn_profile** out) {
    if (auto st = require(out != nullptr, "null argument")) return st;
    return guarded(
        [&] { *out = new defconn_profile{gromov_thurston_profile(k, r0, blend_lo, blend_hi)}; });
}

defconn_status defconn_profile_eval(const defconn_profile* p, double r, double* f, double* d1,
                                    double* d2) {
    if (auto st = require(p && f && d1 && d2, "null argument")) return st;
    return guarded([&] {
        *f = p->prof.f(r);
        *d1 = p->prof.d1(r);
        *d2 = p->prof.d2(r);
    });
}

defconn_status defconn_operator_ramified_cover(const defconn_profile* p, double r,
                                               defconn_operator** out) {
    if (auto st = require(p && out, "null argument")) return st;
    return guarded([&] { *out = new defconn_operator{ramified_cover_operator(p->prof, r)}; });
}

void defconn_profile_destroy(defconn_profile* p) { delete p; }

defconn_status defconn_family_builtin(const char* name, int n, defconn_family** out) {
    if (auto st = require(name && out, "null argument")) return st;
    return guarded([&] { *out = new defconn_family{builtin_family(name, n)}; });
}

defconn_status defconn_family_table(const double* r, const double* f1, const double* f2,
                                    const double* f3, int len, double fd_step,
                                    defconn_family** out) {
    if (auto st = require(r && f1 && f2 && f3 && out && len > 0, "null or empty argument"))
        return st;
    return guarded([&] {
        const std::size_t n = static_cast<std::size_t>(len);
        *out = new defconn_family{table_family(std::vector<double>(r, r + n),
                                               std::vector<double>(f1, f1 + n),
                                               std::vector<double>(f2, f2 + n),
                                               std::vector<double>(f3, f3 + n), fd_step)};
    });
}

defconn_status defconn_family_eval(const defconn_family* fam, double r, double f[3],
                                   double fprime[3]) {
    if (auto st = require(fam && f && fprime, "null argument")) return st;
    return guarded([&] {
        for (int i = 0; i < 3; ++i) {
            f[i] = fam->fam.f[i].f(r);
            fprime[i] = fam->fam.f[i].d1(r);
        }
    });
}

defconn_status defconn_family_domain(const defconn_family* fam, double* r_min, double* r_max) {
    if (auto st = require(fam && r_min && r_max, "null argument")) return st;
    *r_min = fam->fam.r_min;
    *r_max = fam->fam.r_max;
    return DEFCONN_OK;
}

void defconn_family_destroy(defconn_family* fam) { delete fam; }

defconn_status defconn_connection_path(const defconn_family* fam, int bundle,
                                       defconn_path** out) {
    if (auto st = require(fam && out, "null argument")) return st;
    if (bundle != DEFCONN_BUNDLE_PLUS && bundle != DEFCONN_BUNDLE_MINUS) {
        g_last_error = "bundle must be DEFCONN_BUNDLE_PLUS or DEFCONN_BUNDLE_MINUS";
        return DEFCONN_ERR_INVALID_ARG;
    }
    return guarded([&] {
        *out = new defconn_path{connection_path(
            fam->fam, bundle == DEFCONN_BUNDLE_PLUS ? Bundle::LambdaPlus : Bundle::LambdaMinus)};
    });
}

defconn_status defconn_isotopy_path(double t, defconn_path** out) {
    if (auto st = require(out != nullptr, "null argument")) return st;
    return guarded([&] { *out = new defconn_path{isotopy_path(t)}; });
}

defconn_status defconn_path_eval(const defconn_path* path, double r, double a[3],
                                 double aprime[3]) {
    if (auto st = require(path && a && aprime, "null argument")) return st;
    return guarded([&] {
        const PathPoint pt = path->path.eval(r);
        for (int i = 0; i < 3; ++i) {
            a[i] = pt.a[i];
            aprime[i] = pt.aprime[i];
        }
    });
}

defconn_status defconn_definite_path_margin(const defconn_path* path, const double* r_grid,
                                            int len, defconn_path_verdict* out) {
    if (auto st = require(path && r_grid && out && len > 0, "null or empty argument")) return st;
    return guarded([&] {
        const PathVerdict v = definite_path_margin(
            path->path, std::vector<double>(r_grid, r_grid + static_cast<std::size_t>(len)));
        out->definite = v.definite ? 1 : 0;
        out->common_sign = v.common_sign;
        out->margin = v.margin;
    });
}

void defconn_path_destroy(defconn_path* path) { delete path; }

defconn_status defconn_reconstruct_blocks(const defconn_family* fam, double r,
                                          defconn_operator** out) {
    if (auto st = require(fam && out, "null argument")) return st;
    return guarded([&] { *out = new defconn_operator{reconstruct_blocks(fam->fam, r)}; });
}

defconn_status defconn_chern_numbers(int64_t chi, int64_t tau, int sign,
                                     defconn_twistor_invariants* out) {
    if (auto st = require(out != nullptr, "null argument")) return st;
    if (sign != DEFCONN_SIGN_POSITIVE && sign != DEFCONN_SIGN_NEGATIVE) {
        g_last_error = "sign must be DEFCONN_SIGN_POSITIVE or DEFCONN_SIGN_NEGATIVE";
        return DEFCONN_ERR_INVALID_ARG;
    }
    return guarded([&] {
        const TwistorInvariants inv = chern_numbers(
            chi, tau, sign == DEFCONN_SIGN_POSITIVE ? Sign::Positive : Sign::Negative);
        out->c1_cubed = inv.c1_cubed;
        out->c1_c2 = inv.c1_c2;
        out->c3 = inv.c3;
        out->c2_omega = inv.c2_omega;
        out->k_cubed_num = inv.k_cubed.num;
        out->k_cubed_den = inv.k_cubed.den;
    });
}

defconn_status defconn_hitchin_thorpe_gate(int64_t chi, int64_t tau, int d_sign,
                                           int* admissible) {
    if (auto st = require(admissible != nullptr, "null argument")) return st;
    const GateReport g =
        hitchin_thorpe_gate(chi, tau, d_sign == DEFCONN_DSIGN_NEG ? DSign::Dneg : DSign::Dpos);
    *admissible = g.admissible ? 1 : 0;
    return DEFCONN_OK;
}

defconn_status defconn_twistor_degree(int64_t euler, int64_t self_intersection,
                                      int64_t double_points, int64_t* degree) {
    if (auto st = require(degree != nullptr, "null argument")) return st;
    return guarded([&] {
        const TwistorDegreeReport rep =
            twistor_degree(SurfaceData{euler, self_intersection, double_points});
        *degree = rep.degree;
    });
}

defconn_status defconn_run_json(const char* request_json, char** response_json) {
    if (auto st = require(request_json && response_json, "null argument")) return st;
    return guarded([&] {
        const std::string resp = run_command(request_json);
        *response_json = dup_string(resp);
        if (!*response_json) fail(ErrorCode::InvalidArgument, "allocation failed");
    });
}

defconn_status defconn_render_text(const char* response_json, char** text) {
    if (auto st = require(response_json && text, "null argument")) return st;
    return guarded([&] {
        const std::string s = render_text(response_json);
        *text = dup_string(s);
        if (!*text) fail(ErrorCode::InvalidArgument, "allocation failed");
    });
}

}  // extern "C"
