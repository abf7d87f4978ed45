/* C interface to the definite-connection curvature toolkit.
 *
 * All objects are opaque handles created and destroyed through this API;
 * every function returns a defconn_status, writing results through out
 * parameters. On failure the thread-local message from defconn_last_error()
 * describes what went wrong. Matrices are row-major 3x3 arrays of 9 doubles.
 */
#ifndef DEFCONN_H
#define DEFCONN_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum defconn_status {
    DEFCONN_OK = 0,
    DEFCONN_ERR_INVALID_ARG = 1,
    DEFCONN_ERR_NONFINITE = 2,
    DEFCONN_ERR_BIANCHI = 3,
    DEFCONN_ERR_NOT_UNIT = 4,
    DEFCONN_ERR_DOMAIN = 5,
    DEFCONN_ERR_BAD_PARAMS = 6,
    DEFCONN_ERR_OUT_OF_RANGE = 7,
    DEFCONN_ERR_PARSE = 8,
    DEFCONN_ERR_THEOREM_VIOLATION = 9,
    DEFCONN_ERR_INTERNAL = 10
} defconn_status;

typedef struct defconn_operator defconn_operator;
typedef struct defconn_family defconn_family;
typedef struct defconn_path defconn_path;
typedef struct defconn_profile defconn_profile;

/* enum-like integer codes used in the report structs */
#define DEFCONN_VERDICT_INDEFINITE 0
#define DEFCONN_VERDICT_DEFINITE 1
#define DEFCONN_ORIENT_NA 0
#define DEFCONN_ORIENT_SAME 1
#define DEFCONN_ORIENT_OPPOSITE 2
#define DEFCONN_SIGN_NA 0
#define DEFCONN_SIGN_POSITIVE 1
#define DEFCONN_SIGN_NEGATIVE 2
#define DEFCONN_TAMED_NONE 0
#define DEFCONN_TAMED_JPLUS 1
#define DEFCONN_TAMED_JMINUS 2
#define DEFCONN_BUNDLE_PLUS 0
#define DEFCONN_BUNDLE_MINUS 1
#define DEFCONN_DSIGN_POS 0
#define DEFCONN_DSIGN_NEG 1

typedef struct defconn_classification {
    int verdict;
    int d_signature;
    int orientation;
    int sign;
    double margin;
    int boundary;
} defconn_classification;

typedef struct defconn_taming_report {
    double margin;
    int tamed_structure;
    double argmin_v[3];
} defconn_taming_report;

typedef struct defconn_pinching_report {
    double min_sec;
    double max_sec;
    double ratio; /* valid only when ratio_defined */
    int ratio_defined;
    int sign_uniform;
    double u_min[3], v_min[3], u_max[3], v_max[3];
    double a1, a2, c1, c2; /* valid only when offsets_defined */
    int offsets_defined;
} defconn_pinching_report;

typedef struct defconn_path_verdict {
    int definite;
    int common_sign; /* +1 / -1 / 0 */
    double margin;
} defconn_path_verdict;

typedef struct defconn_verify_report {
    uint64_t drawn;
    uint64_t kept;
    uint64_t violations;
    double min_d_margin;
    double min_strengthened_margin;
} defconn_verify_report;

typedef struct defconn_twistor_invariants {
    int64_t c1_cubed;
    int64_t c1_c2;
    int64_t c3;
    int64_t c2_omega;
    int64_t k_cubed_num;
    int64_t k_cubed_den;
} defconn_twistor_invariants;

const char* defconn_version(void);
const char* defconn_last_error(void);
void defconn_string_free(char* s);

/* ---- curvature operators ---- */

defconn_status defconn_operator_from_blocks(const double A[9], const double B[9],
                                            const double C[9], int relaxed,
                                            defconn_operator** out);
defconn_status defconn_operator_from_sectional(const double K[6], defconn_operator** out);
defconn_status defconn_operator_from_ricci_spectrum(const double lambda[4], const double Wplus[9],
                                                    const double Wminus[9],
                                                    defconn_operator** out);
defconn_status defconn_operator_reverse(const defconn_operator* op, defconn_operator** out);
defconn_status defconn_operator_blocks(const defconn_operator* op, double A[9], double B[9],
                                       double C[9]);
defconn_status defconn_operator_decompose(const defconn_operator* op, double Wplus[9],
                                          double Wminus[9], double ric0[9], double* s);
defconn_status defconn_operator_d_matrix(const defconn_operator* op, double D[9]);
void defconn_operator_destroy(defconn_operator* op);

/* ---- definiteness, taming, spectra ---- */

defconn_status defconn_classify(const defconn_operator* op, double tol,
                                defconn_classification* out);
defconn_status defconn_taming_margin(const defconn_operator* op, int grid_n, int refine_iters,
                                     double tol, defconn_taming_report* out);
defconn_status defconn_tame_pointwise(double c, const double alpha[3], int* out);
defconn_status defconn_ricci_operator_spectrum(const double lambda[4], double out[6]);
defconn_status defconn_bochner_condition(const defconn_operator* op, int* out);
defconn_status defconn_eigen_sum_dominance(const double A[9], const double B[9],
                                           int* holds_hypothesis, double* sum_abs_a,
                                           double* sum_abs_b);
defconn_status defconn_ricci_positive_check(const double lambda[4], const double Wplus[9],
                                            int* premises, double* min_lambda);

/* ---- sectional curvature ---- */

defconn_status defconn_sectional_value(const defconn_operator* op, const double u[3],
                                       const double v[3], double* out);
defconn_status defconn_sectional_extrema(const defconn_operator* op, int grid_n,
                                         int refine_iters, defconn_pinching_report* out);
defconn_status defconn_verify_pinching(int n_samples, uint64_t seed, int strengthened,
                                       defconn_verify_report* out);

/* ---- radial profiles and the ramified-cover operator ---- */

defconn_status defconn_profile_scaled_sinh(double k, defconn_profile** out);
defconn_status defconn_profile_gromov_thurston(int k, double r0, double blend_lo,
                                               double blend_hi, defconn_profile** out);
defconn_status defconn_profile_eval(const defconn_profile* p, double r, double* f, double* d1,
                                    double* d2);
defconn_status defconn_operator_ramified_cover(const defconn_profile* p, double r,
                                               defconn_operator** out);
void defconn_profile_destroy(defconn_profile* p);

/* ---- cohomogeneity-one families ---- */

defconn_status defconn_family_builtin(const char* name, int n, defconn_family** out);
defconn_status defconn_family_table(const double* r, const double* f1, const double* f2,
                                    const double* f3, int len, double fd_step,
                                    defconn_family** out);
defconn_status defconn_family_eval(const defconn_family* fam, double r, double f[3],
                                   double fprime[3]);
defconn_status defconn_family_domain(const defconn_family* fam, double* r_min, double* r_max);
void defconn_family_destroy(defconn_family* fam);

defconn_status defconn_connection_path(const defconn_family* fam, int bundle,
                                       defconn_path** out);
defconn_status defconn_isotopy_path(double t, defconn_path** out);
defconn_status defconn_path_eval(const defconn_path* path, double r, double a[3],
                                 double aprime[3]);
defconn_status defconn_definite_path_margin(const defconn_path* path, const double* r_grid,
                                            int len, defconn_path_verdict* out);
void defconn_path_destroy(defconn_path* path);

defconn_status defconn_reconstruct_blocks(const defconn_family* fam, double r,
                                          defconn_operator** out);

/* ---- topology ---- */

defconn_status defconn_chern_numbers(int64_t chi, int64_t tau, int sign,
                                     defconn_twistor_invariants* out);
defconn_status defconn_hitchin_thorpe_gate(int64_t chi, int64_t tau, int d_sign,
                                           int* admissible);
defconn_status defconn_twistor_degree(int64_t euler, int64_t self_intersection,
                                      int64_t double_points, int64_t* degree);

/* ---- JSON command interface (used by the CLI) ----
 * Executes one request and returns a newly allocated response string to be
 * released with defconn_string_free. See the project README for schemas. */
defconn_status defconn_run_json(const char* request_json, char** response_json);
defconn_status defconn_render_text(const char* response_json, char** text);

#ifdef __cplusplus
}
#endif

#endif /* DEFCONN_H */
