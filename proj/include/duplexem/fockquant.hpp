#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "duplexem/cavity.hpp"

namespace duplexem {

using Mat = Eigen::MatrixXcd;

enum class OpLabel { annihilate, create, hamiltonian, g_factor, custom };
enum class Scheme { time_local, space_local, spacetime_local };

struct FockOperator {
    int dim = 0;
    Mat m;
    OpLabel label = OpLabel::custom;
};

struct ModeLadder {
    FockOperator a;
    FockOperator adag;
};

ModeLadder make_ladder(int dim);

Mat commutator(const Mat& a, const Mat& b);
Mat anticommutator(const Mat& a, const Mat& b);
// max |a - b| over rows/cols in `keep`
double restricted_max_diff(const Mat& a, const Mat& b, const std::vector<int>& keep);
// single-factor safe block: states 0..d-2
std::vector<int> safe_indices(int dim);
// tensor safe block: (i, j) with i, j <= d-2
std::vector<int> safe_indices_tensor(int dim);
Mat kron(const Mat& a, const Mat& b);

std::vector<ModeLadder> time_local_operators(const CavityModel& model, int dim, double t);
std::vector<ModeLadder> space_local_operators(const CavityModel& model, int dim, double z);
// hbar w (a^+ a + 1/2) and lambda0 w (a''^+ a'' + 1/2)
FockOperator time_local_hamiltonian(const CavityModel& model, int alpha, int dim);
FockOperator space_local_hamiltonian(const CavityModel& model, int alpha, int dim);

// Eigenvalues of a Hermitian operator, ascending.
std::vector<double> hermitian_spectrum(const Mat& m);

struct SpacetimeReport {
    int dim = 0;  // per factor
    bool degenerate = false;
    Mat q, p;  // q_z (x) q_t, p_z (x) p_t
    Mat a, adag;
    std::array<Mat, 4> g;        // ordering variants
    Mat g_sym;                   // 1/4 sum g^(j)
    double g_sym_err = 0.0;      // vs -hbar lambda0 on the safe block
    double g_literal_sum = 0.0;  // max |1/4 sum of the as-written g^(j)|
    Mat comm;                    // actual [a, a^+]
    double comm_dist_identity = 0.0;
    double comm_dist_minus_i = 0.0;
    cplx comm_via_g{};           // scalar from [p, q] = i g with g = -hbar lambda0
    double pq_scalar_dev = 0.0;  // deviation of [p, q] from a multiple of identity on the safe block
};

SpacetimeReport spacetime_local_operators(const CavityModel& model, int alpha, int dim, double z, double t);

// Per-mode field operators at (z, t).
struct OperatorField {
    Scheme scheme = Scheme::time_local;
    int dim = 0;
    std::vector<FockOperator> e;  // E_x per mode
    std::vector<FockOperator> h;  // H_y per mode
};

OperatorField assemble_field_operators(const CavityModel& model, Scheme scheme, int dim, double z, double t);
// Second-solution operators built on a'' (time-local): E^[2] = sum sqrt(hbar w/(V eps0)) (a''^+ + a'') sin kz,
// H^[2] = -i sum sqrt(hbar w/(V mu0)) (a''^+ - a'') cos kz, with a'' = -a in the secular-free link.
OperatorField assemble_second_field_operators(const CavityModel& model, int dim, double z, double t);

cplx vacuum_expectation(const Mat& op);
// <0| sum_alpha O_alpha^2 |0> for per-mode operators (cross-mode terms vanish)
double vacuum_variance(const std::vector<FockOperator>& ops);

// Heisenberg check: finite-difference da/dt vs (1/(i hbar)) [a, H] on the safe block.
double heisenberg_residual(const CavityModel& model, int alpha, int dim, double t, double h = 1e-5);

struct TrigAnsatzReport {
    double exp_maxwell_residual = 0.0;   // d_t(a^+ + a) - i w (a^+ - a), exponential ansatz
    double trig_maxwell_residual = 0.0;  // same for a^+(t) = a^+(0) cos wt
    double trig_heisenberg_residual = 0.0;
    double exp_heisenberg_residual = 0.0;
    double commutator_drift = 0.0;       // max |[a(t), a^+(t)] - [a(0), a^+(0)]| on the safe block
    double required_scalar_spread = 0.0; // spread of tan(wt) over the sample times
    double lhs_scalar_dev = 0.0;         // (a^+ - a)^{-1}(a^+ + a) distance from a multiple of identity
    bool rejected = false;
};

TrigAnsatzReport trigonometric_ansatz_check(int dim, double omega, const std::vector<double>& times,
                                            double tol = 1e-10);

}  // namespace duplexem
