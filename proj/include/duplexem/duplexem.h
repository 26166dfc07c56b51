/* C interface to the duplexem library. All functions are thread-safe on distinct handles;
   the last error message is kept per thread. */
#ifndef DUPLEXEM_H
#define DUPLEXEM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef DUPLEXEM_BUILDING
#    define DX_API __declspec(dllexport)
#  else
#    define DX_API __declspec(dllimport)
#  endif
#else
#  define DX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dx_status {
    DX_OK = 0,
    DX_ERR_NULL = 1,     /* required pointer argument was NULL */
    DX_ERR_DOMAIN = 2,   /* precondition violated (bad parameter, out of range) */
    DX_ERR_CONFIG = 3,   /* inconsistent option combination */
    DX_ERR_NUMERIC = 4,  /* solver or quadrature could not meet its contract */
    DX_ERR_BUFFER = 5,   /* caller buffer too small; required size reported */
    DX_ERR_INTERNAL = 6
} dx_status;

DX_API const char* dx_last_error(void);
DX_API const char* dx_status_string(dx_status s);
DX_API const char* dx_version(void);

typedef struct dx_complex {
    double re, im;
} dx_complex;

typedef struct dx_field_pair {
    dx_complex e[3];
    dx_complex h[3];
} dx_field_pair;

typedef struct dx_constants {
    double c, eps0, mu0, hbar, lambda0, e_charge;
} dx_constants;

DX_API void dx_constants_natural(dx_constants* out);
DX_API void dx_constants_si(dx_constants* out);

/* ---- dual symmetry ---- */

typedef struct dx_invariants {
    double i1p, i2p, k_inv; /* circular-dual invariants and K = I1'^2 + I2'^2 */
    double i1h, i2h;        /* hyperbolic-dual invariants */
    double w;               /* I1''/I2''; NaN when w_defined == 0 */
    int w_defined;
} dx_invariants;

DX_API dx_status dx_dual_rotate(const dx_field_pair* in, double theta, dx_field_pair* out);
DX_API dx_status dx_hyperbolic_dual(const dx_field_pair* in, double vartheta, dx_field_pair* out);
DX_API dx_status dx_hyperbolic_dual_axes(const dx_field_pair* in, double vartheta, const double axis[3],
                                         dx_field_pair* out);
DX_API dx_status dx_invariants_eval(const dx_field_pair* f, double theta, double vartheta, dx_invariants* out);
/* axis NULL means z; k NULL means natural constants; si_units != 0 scales H by Z0 */
DX_API dx_status dx_lorentz_boost(const dx_field_pair* in, double beta, const double axis[3], int si_units,
                                  const dx_constants* k, dx_field_pair* out);

/* ---- cavity ---- */

typedef struct dx_cavity dx_cavity;

typedef enum dx_convention { DX_CONV_SECULAR_FREE = 0, DX_CONV_DEFINITE = 1 } dx_convention;

/* k NULL means natural constants. Modes start as C1 = C2 = 1/2 (q = cos wt). */
DX_API dx_status dx_cavity_create(double length, double volume, int n_modes, const dx_constants* k,
                                  dx_convention convention, dx_cavity** out);
DX_API void dx_cavity_destroy(dx_cavity* c);
DX_API dx_status dx_cavity_set_mode(dx_cavity* c, int alpha, dx_complex c1, dx_complex c2);
DX_API dx_status dx_cavity_set_mass(dx_cavity* c, int alpha, double m);
DX_API dx_status dx_cavity_randomize(dx_cavity* c, uint64_t seed);
DX_API dx_status dx_cavity_frequency(const dx_cavity* c, int alpha, double* omega, double* k);
/* solution: 1 or 2 */
DX_API dx_status dx_cavity_field(const dx_cavity* c, int solution, double z, double t, dx_field_pair* out);
/* residuals of the four generalized equations on an nz x nt grid
   spanning [0, L] x [0, L/c], after dual rotation by dual_theta */
DX_API dx_status dx_cavity_maxwell_residual(const dx_cavity* c, int solution, double dual_theta, int nz, int nt,
                                            double out[4]);
DX_API dx_status dx_cavity_energy(const dx_cavity* c, double t, double* field_energy, double* mode_sum);
DX_API dx_status dx_cavity_secular(const dx_cavity* c, int* has_secular);

/* ---- currents ---- */

typedef struct dx_current {
    dx_complex j3_1, j3_2, j4_1, j4_2;
} dx_current;

/* sign selects the u-function family (+1 or -1) */
DX_API dx_status dx_current_eval(const dx_cavity* c, int sign, double z, double t, dx_current* out);
DX_API dx_status dx_current_closed_form(const dx_cavity* c, int sign, double z, double t, dx_current* out);
DX_API dx_status dx_current_continuity(const dx_cavity* c, int sign, int nz, int nt, double* residual,
                                       double* scale);
DX_API dx_status dx_noether_charge(const dx_cavity* c, int sign, double t, double* q1, double* q2);
DX_API dx_status dx_spirality(const dx_cavity* c, int sign, double z, double t, double* density,
                              double* integrated);
/* out: im_residual, re_residual, re_j3_norm, re_j4_norm (time-local operators, safe block) */
DX_API dx_status dx_quantized_continuity(const dx_cavity* c, int dim, int nz, int nt, int literal_prefactor,
                                         double out[4]);
DX_API dx_status dx_charge_ratio(double j_e, double j_h, double* ratio);

/* ---- truncated Fock operators ---- */

typedef struct dx_operator dx_operator;

typedef enum dx_op_kind {
    DX_OP_ANNIHILATE = 0,
    DX_OP_CREATE = 1,
    DX_OP_HAMILTONIAN_TIME = 2,
    DX_OP_HAMILTONIAN_SPACE = 3,
    DX_OP_FIELD_E = 4,
    DX_OP_FIELD_H = 5
} dx_op_kind;

typedef enum dx_scheme { DX_SCHEME_TIME = 0, DX_SCHEME_SPACE = 1, DX_SCHEME_SPACETIME = 2 } dx_scheme;

DX_API dx_status dx_operator_ladder(int dim, int create, dx_operator** out);
/* Operator of mode alpha; field kinds use the scheme and (z, t), ladder kinds the time-local phase. */
DX_API dx_status dx_operator_build(const dx_cavity* c, dx_op_kind kind, dx_scheme scheme, int alpha, int dim,
                                   double z, double t, dx_operator** out);
DX_API int dx_operator_dim(const dx_operator* op);
/* row-major, n >= dim*dim */
DX_API dx_status dx_operator_entries(const dx_operator* op, dx_complex* buf, size_t n);
/* ascending eigenvalues of a Hermitian operator, n >= dim */
DX_API dx_status dx_operator_spectrum(const dx_operator* op, double* buf, size_t n);
DX_API void dx_operator_destroy(dx_operator* op);

typedef struct dx_quantization_report {
    double comm_safe_err;      /* [a, a+] - 1 on the safe block */
    double spectrum_err;       /* time-local spectrum vs hbar w (n + 1/2), n = 0..dim-2 */
    double g_sym_err;          /* symmetrized g vs -hbar lambda0 */
    double g_literal_sum;
    double comm_dist_identity; /* space-time [a, a+] vs 1 and vs -i */
    double comm_dist_minus_i;
    dx_complex comm_via_g;
    double trig_exp_residual;
    double trig_trig_residual;
    double trig_commutator_drift;
    double trig_scalar_spread;
    int trig_rejected;
    int degenerate;
} dx_quantization_report;

DX_API dx_status dx_quantization_report_eval(const dx_cavity* c, int alpha, int dim, double z, double t,
                                             dx_quantization_report* out);

/* ---- resonance ---- */

typedef struct dx_resonance_params {
    double gamma_e, S, tau, E1, nu0, A_param;
} dx_resonance_params;

DX_API dx_status dx_resonance_amplitude(const dx_resonance_params* p, int n, double omega, dx_complex* out);
DX_API dx_status dx_resonance_dispersion(const dx_resonance_params* p, int n, double* nu);
DX_API dx_status dx_resonance_fit(const double* n, const double* nu, size_t count, double* nu0, double* A,
                                  double* max_residual);
DX_API dx_status dx_splitting_parameter(double a_lattice, double S, double J_E, double L_chain, double hbar,
                                        double* A);

/* ---- SSH Fermi liquid ---- */

typedef struct dx_ssh_params {
    double t0, alpha1, alpha2, u, K_spring, a, M_eff;
    int N;
} dx_ssh_params;

typedef enum dx_gap_method { DX_GAP_ELLIPTIC = 0, DX_GAP_QUADRATURE = 1 } dx_gap_method;
typedef enum dx_gap_form { DX_GAP_FULL = 0, DX_GAP_ASYMPTOTIC = 1 } dx_gap_form;

typedef struct dx_gap_options {
    dx_gap_method method;
    dx_gap_form form;
    double q_min, q_max; /* both 0: default bracket */
    int scan_points;
    double tol;
    int nk; /* rows in the k table */
} dx_gap_options;

DX_API void dx_ssh_params_default(dx_ssh_params* p);
DX_API void dx_gap_options_default(dx_gap_options* o);

typedef struct dx_gap_solution dx_gap_solution;

typedef struct dx_gap_summary {
    int found;
    double Q;
    double kappa; /* 2 alpha1 u Q / t0 */
    double residual;
    int n_roots;
    int multiple_roots;
    int ssh_like_branch;
    int regime; /* -1: kappa < 1, 0: kappa = 1, +1: kappa > 1 */
} dx_gap_summary;

typedef struct dx_gap_row {
    double k, alpha, beta, product;
    int degenerate;
    double ec_branch1, ec_branch2;
    int stab_branch1[3];
    int stab_branch2[3];
} dx_gap_row;

DX_API dx_status dx_gap_solve(const dx_ssh_params* p, double n_c, double n_v, const dx_gap_options* o,
                              dx_gap_solution** out);
DX_API void dx_gap_solution_destroy(dx_gap_solution* s);
DX_API dx_status dx_gap_summary_get(const dx_gap_solution* s, dx_gap_summary* out);
/* the *count out-parameter always receives the required size */
DX_API dx_status dx_gap_roots(const dx_gap_solution* s, double* buf, size_t n, size_t* count);
DX_API dx_status dx_gap_rows(const dx_gap_solution* s, dx_gap_row* buf, size_t n, size_t* count);
DX_API dx_status dx_gap_residual_curve(const dx_gap_solution* s, double* q, double* f, size_t n, size_t* count);
DX_API dx_status dx_gap_residual(const dx_ssh_params* p, double n_c, double n_v, double Q, dx_gap_method m,
                                 dx_gap_form form, double* out);
DX_API dx_status dx_gap_discrete(const dx_ssh_params* p, double n_c, double n_v, int nk, dx_gap_form form,
                                 double q_lo, double q_hi, double* Q);

typedef struct dx_gap_approx {
    double q_small;
    int small_applicable, small_valid;
    double q_large[2];
    int large_applicable;
    int large_valid[2];
} dx_gap_approx;

DX_API dx_status dx_gap_approximations(const dx_ssh_params* p, dx_gap_approx* out);
/* out: quadrature, elliptic, small-z */
DX_API dx_status dx_ground_energy(const dx_ssh_params* p, double Q, double u, double out[3]);
DX_API dx_status dx_find_u0(const dx_ssh_params* p, double Q, double u_max, double* u0, int* flat,
                            double* well_depth);
DX_API dx_status dx_elliptic_K(double k, double* out);
DX_API dx_status dx_elliptic_E(double k, double* out);

/* ---- invariant suite ---- */

typedef struct dx_verify_row {
    const char* module;
    const char* name;
    double value;
    double tol;
    int pass;
    int expected_fail;
} dx_verify_row;

typedef void (*dx_verify_callback)(const dx_verify_row* row, void* user);

/* Rows are delivered in a fixed order; n_failed counts unexpected failures. */
DX_API dx_status dx_verify_all(uint64_t seed, dx_verify_callback cb, void* user, int* n_failed);

#ifdef __cplusplus
}
#endif

#endif /* DUPLEXEM_H */
