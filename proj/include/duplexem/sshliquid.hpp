#pragma once

#include <string>
#include <vector>

#include "duplexem/types.hpp"

namespace duplexem {

struct SshParams {
    double t0 = 1.0;
    double alpha1 = 1.0;
    double alpha2 = 0.0;
    double u = 0.0;
    double K_spring = 1.0;
    double a = 1.0;
    double M_eff = 1.0;
    int N = 100;

    void validate() const;
    double eps(double k) const;    // 2 t0 cos ka
    double delta(double k) const;  // 4 alpha1 u sin ka
    double kappa(double Q) const;  // 2 alpha1 u Q / t0
};

struct Occupation {
    double n_c = 0.0;
    double n_v = 1.0;
    static Occupation ground() { return {0.0, 1.0}; }
    static Occupation inverted() { return {1.0, 0.0}; }
    double sigma() const { return n_c - n_v; }
};

enum class GapMethod { quadrature_root, elliptic };
// full: Q = 1 + sigma C' Q I(kappa);  asymptotic: sigma C' I(kappa) = 1 (unity dropped)
enum class GapForm { full, asymptotic };
enum class Branch { ssh_like, near_equilibrium };

struct BogoliubovCoeffs {
    double alpha = 1.0;
    double beta = 0.0;
    double product = 0.0;  // alpha * beta
    bool degenerate = false;
};

// sign_branch = +1: beta^2 = (1 + eps/R)/2; -1: beta^2 = (1 - eps/R)/2
BogoliubovCoeffs bogoliubov_coeffs(const SshParams& p, double Q, double k, int sign_branch);

// (1/a) int_0^{pi/2} sin^2 th / sqrt(1 - (1 - kappa^2) sin^2 th) dth
double gap_integral_elliptic(double kappa, double a);
// same integral by adaptive quadrature of the k-space integrand
double gap_integral_quadrature(double kappa, double a);

struct GapOptions {
    GapMethod method = GapMethod::elliptic;
    GapForm form = GapForm::full;
    double q_min = 0.0;  // both zero: default bracket +-max(10 alpha2 N/alpha1, 10)
    double q_max = 0.0;
    int scan_points = 2000;
    double tol = 1e-12;
    int nk = 129;  // k-grid rows in the solution table
};

struct StabilityFlags {
    bool cond1 = false;
    bool cond2 = false;
    bool cond3 = false;
};

struct GapRow {
    double k = 0.0;
    BogoliubovCoeffs coeffs;
    double ec_branch1 = 0.0;  // near-equilibrium
    double ec_branch2 = 0.0;  // ssh-like
    StabilityFlags stab_branch1;
    StabilityFlags stab_branch2;
};

struct GapSolution {
    bool found = false;
    double Q = 0.0;
    std::vector<double> roots;
    bool multiple_roots = false;
    Branch branch = Branch::near_equilibrium;
    double kappa = 0.0;
    std::string regime;  // "kappa<1", "kappa>1" or "kappa=1"
    double residual = 0.0;
    double z_sq = 0.0;   // 2 alpha1 u Q / t0
    std::vector<GapRow> rows;
    std::vector<std::pair<double, double>> residual_curve;  // filled when no root is found
};

double gap_residual(const SshParams& p, const Occupation& occ, double Q, GapMethod method, GapForm form);
GapSolution solve_gap(const SshParams& p, const Occupation& occ, const GapOptions& opt = {});
// right side of the full equation, 1 + sigma C' Q I(kappa)
double gap_rhs(const SshParams& p, const Occupation& occ, double Q);

// Discrete Brillouin-zone sum with nk trapezoid points on [0, pi/2a], solved by bracketing.
double solve_gap_discrete(const SshParams& p, const Occupation& occ, int nk, GapForm form, double q_lo, double q_hi);

struct GapApproximations {
    double q_small = 0.0;  // (t0/6u) sqrt(25 - 32 t0 alpha1/(N u alpha2))
    bool small_applicable = false;
    bool small_valid = false;  // (1/3) sqrt(radicand) < 1
    double q_large[2] = {0.0, 0.0};  // (-3 alpha2 N/16)[1 +- sqrt(1 + 80 alpha1 t0/(9 N u alpha2))]
    bool large_applicable = false;
    bool large_valid[2] = {false, false};  // |kappa| > 1
};

GapApproximations gap_approximations(const SshParams& p);

struct BandEnergies {
    double ec_branch1 = 0.0, ev_branch1 = 0.0;  // near-equilibrium
    double ec_branch2 = 0.0, ev_branch2 = 0.0;  // ssh-like
};

BandEnergies band_energies(const SshParams& p, double Q, double k);
StabilityFlags stability_classify(const SshParams& p, double Q, double k, const Occupation& occ, Branch branch);

double ground_energy_quadrature(const SshParams& p, double Q, double u);
double ground_energy_elliptic(const SshParams& p, double Q, double u);
double ground_energy_smallz(const SshParams& p, double Q, double u);

struct GroundStateCurve {
    std::vector<double> u;
    std::vector<double> e0_quadrature;
    std::vector<double> e0_elliptic;
    std::vector<double> e0_smallz;
    double u0 = 0.0;
    double well_depth = 0.0;
    bool flat = false;
};

GroundStateCurve ground_state_energy(const SshParams& p, double Q, const std::vector<double>& u_grid);
// golden-section refinement of argmin over [0, u_max]; flat = minimum at u = 0
double find_u0(const SshParams& p, double Q, double u_max, bool& flat);

}  // namespace duplexem
