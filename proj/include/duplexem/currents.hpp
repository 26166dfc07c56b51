#pragma once

#include <vector>

#include "duplexem/cavity.hpp"
#include "duplexem/fockquant.hpp"

namespace duplexem {

enum class SpatialKind { sin, cos, expi };

// amp * S(z) * (a1 e^{iwt} + a2 e^{-iwt} + b0 + b1 t)
struct ModeFunctionTerm {
    int sector = 1;  // 1 or 2
    int mode = 1;
    SpatialKind kind = SpatialKind::sin;
    double k = 0.0;
    double omega = 0.0;
    cplx amp = 1.0;
    cplx a1{}, a2{}, b0{}, b1{};
};

struct UJet {
    cplx v{}, dz{}, dt{}, dzz{}, dtt{};
};

struct FieldFunctionSet {
    std::vector<ModeFunctionTerm> terms;
    int n_modes = 0;
    double area = 1.0;
    double c = 1.0;
    double z_min = 0.0, z_max = 1.0;
    double k_lagrange = 0.0;  // K(x) in L = sum d_mu u d_mu u* - K u u*
    double gauge_alpha = 0.0, gauge_beta = 1.0;

    UJet eval(int sector, int mode, double z, double t) const;
};

// u1 = sqrt(eps0) A^E sin kz [q +- i q''], u2 = sqrt(mu0) A^H cos kz [-q' +- (i/w) dq/dt]
FieldFunctionSet make_fieldset(const CavityModel& model, const ModeState& state, int sign);
FieldFunctionSet plane_wave_fieldset(double k, double omega, double c, cplx amp, double length);
// u -> beta e^{i alpha} u
FieldFunctionSet gauge_transform(const FieldFunctionSet& fs, double alpha, double beta);
// (u1, u2) -> (u1 cos + u2 sin, u2 cos - u1 sin) per mode
FieldFunctionSet dual_rotate_fieldset(const FieldFunctionSet& fs, double theta);
FieldFunctionSet drop_sector(const FieldFunctionSet& fs, int sector);

// j = j^(1) + i j^(2); each part is complex because x4 = ict
struct FourCurrent {
    cplx j3_1{}, j3_2{}, j4_1{}, j4_2{};
};

// Closed forms for Maxwellian (secular-free) cavity states.
FourCurrent classical_current(const CavityModel& model, const ModeState& state, int sign, double z, double t);
// General forms j^(1) = -(ie/hbar c) sum [d u* u - d u u*], j^(2) = -(ie/hbar c) sum d |u|^2
FourCurrent current_general(const FieldFunctionSet& fs, const PhysicalConstants& k, double z, double t);

struct CurrentJet {
    FourCurrent j;
    cplx dz_j3_1{}, dz_j3_2{}, dt_j4_1{}, dt_j4_2{};
};
CurrentJet current_jet(const FieldFunctionSet& fs, const PhysicalConstants& k, double z, double t);

using CurrentSource = std::function<CurrentJet(double, double)>;
// max |d3 j3 + d4 j4| over the grid, d4 = -(i/c) d/dt, for both the (1) and (2) parts
double continuity_residual(const CurrentSource& src, const SampleGrid& grid, double c);
double continuity_residual(const FieldFunctionSet& fs, const PhysicalConstants& k, const SampleGrid& grid,
                           const CavityModel* model = nullptr);
// max of |d3 j3| and |d4 j4| over the grid; the natural scale for the residual above
double continuity_scale(const FieldFunctionSet& fs, const PhysicalConstants& k, const SampleGrid& grid);

struct NoetherCharge {
    double q1 = 0.0;
    double q2 = 0.0;
    cplx q{};
    double alpha = 0.0, beta = 1.0;
};

// Q1 = (2/c) int Im sum u* du/dt A dz, Q2 = (1/c) int d/dt sum |u|^2 A dz over [z0, z1]
NoetherCharge noether_charge(const FieldFunctionSet& fs, double t);
NoetherCharge noether_charge(const FieldFunctionSet& fs, double t, double z0, double z1);
// int sum [d4 u* u + d4 u u*] A dz; Q2 = i times this
cplx q2_analytic_form(const FieldFunctionSet& fs, double t, double z0, double z1);
double lagrange_residual(const FieldFunctionSet& fs, double z, double t);

struct SpinDensity {
    double s4_12 = 0.0;  // density at the evaluation point
    double s4_3 = 0.0;   // integrated over [z0, z1]
};

double spirality_density(const FieldFunctionSet& fs, double z, double t);
SpinDensity spirality(const FieldFunctionSet& fs, double t);
SpinDensity spirality(const FieldFunctionSet& fs, double t, double z0, double z1);

double charge_ratio_estimate(double j_e, double j_h);

// Operator-valued currents, time-local scheme, per mode. a'' = -a (secular-free link).
enum class ImJ4Prefactor { consistent, literal };

struct QuantizedCurrentMode {
    Mat re_j3, im_j3, re_j4, im_j4;
};

std::vector<QuantizedCurrentMode> quantized_current(const CavityModel& model, Scheme scheme, int dim, double z,
                                                    double t, int sign = 1,
                                                    ImJ4Prefactor pref = ImJ4Prefactor::consistent);

struct QuantizedContinuity {
    double im_residual = 0.0;  // d3 Im j3 + d4 Im j4
    double re_residual = 0.0;  // d4 Re j4
    double re_j3_norm = 0.0;
    double re_j4_norm = 0.0;
};

// Time derivatives from the Heisenberg commutator; max over modes, grid and the safe block.
QuantizedContinuity quantized_continuity(const CavityModel& model, int dim, const SampleGrid& grid, int sign = 1,
                                         ImJ4Prefactor pref = ImJ4Prefactor::consistent);
// Same with central finite differences in t and z (cross-check).
QuantizedContinuity quantized_continuity_fd(const CavityModel& model, int dim, const SampleGrid& grid,
                                            double h = 1e-5, int sign = 1);

}  // namespace duplexem
