#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "duplexem/algebra.hpp"
#include "duplexem/types.hpp"

namespace duplexem {

// How the integration constants in q' = w int q, q'' = w int q' are fixed.
enum class Convention { secular_free, definite };

struct ModeCoeffs {
    cplx c1{};
    cplx c2{};
};

struct ModeState {
    std::vector<ModeCoeffs> modes;  // index 0 is mode alpha = 1

    static ModeState cosine(int n_modes, double amplitude = 1.0);
    static ModeState random(int n_modes, std::uint64_t seed);
};

struct CavityModel {
    double length = 1.0;
    double volume = 1.0;
    int n_modes = 1;
    std::vector<double> mass;  // m_alpha; empty means 1 for every mode
    PhysicalConstants k;
    Convention convention = Convention::secular_free;

    double omega(int alpha) const;    // alpha pi c / L
    double wavenum(int alpha) const;  // alpha pi / L
    double m(int alpha) const;
    double amp_e(int alpha) const;  // sqrt(2 w^2 m / (V eps0))
    double amp_h(int alpha) const;  // sqrt(2 w^2 m / (V mu0))
    double period() const { return length / k.c; }  // T = L/c
    double area() const { return volume / length; }
    void validate() const;
};

// value and the first two time derivatives
struct Jet {
    cplx v{};
    cplx d1{};
    cplx d2{};
};

Jet q_jet(const CavityModel& model, const ModeCoeffs& c, int alpha, double t);
Jet q_prime_jet(const CavityModel& model, const ModeCoeffs& c, int alpha, double t);
Jet q_second_jet(const CavityModel& model, const ModeCoeffs& c, int alpha, double t);
// true when the definite convention leaves a secular (linear in t) term in q''
bool has_secular_term(const CavityModel& model, const ModeCoeffs& c);

// Field value with analytic first derivatives in z and t.
struct FieldJet {
    FieldPair f;
    FieldPair dz;
    FieldPair dt;
};

using FieldSource = std::function<FieldJet(double z, double t)>;

FieldPair field_first_solution(const CavityModel& model, const ModeState& state, double z, double t);
FieldPair field_second_solution(const CavityModel& model, const ModeState& state, double z, double t);
FieldJet first_solution_jet(const CavityModel& model, const ModeState& state, double z, double t);
FieldJet second_solution_jet(const CavityModel& model, const ModeState& state, double z, double t);

FieldSource first_solution_source(const CavityModel& model, const ModeState& state);
FieldSource second_solution_source(const CavityModel& model, const ModeState& state);
FieldSource dual_rotated_source(FieldSource src, double theta);
FieldSource scaled_h_source(FieldSource src, double factor);

struct SampleGrid {
    double z0 = 0.0, z1 = 1.0;
    double t0 = 0.0, t1 = 1.0;
    int nz = 64, nt = 64;

    static SampleGrid cavity(const CavityModel& model, int nz = 64, int nt = 64);
    double z(int i) const { return nz == 1 ? z0 : z0 + (z1 - z0) * i / (nz - 1); }
    double t(int j) const { return nt == 1 ? t0 : t0 + (t1 - t0) * j / (nt - 1); }
};

// Rejects grids with fewer than 4 points per shortest wavelength (in z) or period (in t).
void validate_grid(const CavityModel& model, const SampleGrid& grid);

enum class ParityLabel { p_odd_t_even, p_odd_t_odd, p_even_t_even, p_even_t_odd };

struct SectorSources {
    std::function<Vec3c(double, double)> j_e, j_g;
    std::function<cplx(double, double)> rho_e, rho_g;
};

struct QuaternionField {
    std::array<FieldSource, 4> sector;
    std::array<ParityLabel, 4> label{ParityLabel::p_odd_t_even, ParityLabel::p_odd_t_odd, ParityLabel::p_even_t_even,
                                     ParityLabel::p_even_t_odd};
    double z_min = 0.0, z_max = 1.0;
    double t_min = 0.0, t_max = 1.0;
    // resolution requirements checked by maxwell_residual; 0 disables the check
    double shortest_wavelength = 0.0;
    double shortest_period = 0.0;
};

struct Domain {
    double z_min = 0.0, z_max = 1.0;
    double t_min = 0.0, t_max = 1.0;
    bool operator==(const Domain&) const = default;
};

// Sectors stay separate; nothing is summed across parity sectors.
QuaternionField assemble_quaternion_field(const std::array<FieldSource, 4>& components,
                                          const std::array<Domain, 4>& domains);

// Packed values: per axis, (E1 - iE2) e + (E3 - iE4) j
struct PackedQuaternion {
    std::array<Quaternion, 3> e;
    std::array<Quaternion, 3> h;
};
PackedQuaternion evaluate_packed(const QuaternionField& q, double z, double t);

// Max deviation from the labelled parities under z -> z_min + z_max - z and t -> -t.
// E carries the P label, H the opposite one (axial); same for t.
double parity_deviation(const QuaternionField& q, const SampleGrid& grid);

// Max-norms of curl E + mu0 dH/dt + j_g, curl H - eps0 dE/dt - j_e, div E - rho_e, div H - rho_g
// over the grid and all sectors. Fields depend on (z, t) only.
std::array<double, 4> maxwell_residual(const QuaternionField& q, const std::array<SectorSources, 4>* sources,
                                       const SampleGrid& grid, const PhysicalConstants& k);
std::array<double, 4> maxwell_residual(const FieldSource& f, const SampleGrid& grid, const PhysicalConstants& k);
// validates the grid against the model's shortest mode first
std::array<double, 4> maxwell_residual(const CavityModel& model, const FieldSource& f, const SampleGrid& grid);
QuaternionField single_sector(FieldSource f, double shortest_wavelength = 0.0, double shortest_period = 0.0);

// Cauchy-Riemann residual of F = sqrt(mu0) H_y - i sqrt(eps0) E_x in w = z + i c t
double cauchy_riemann_residual(const FieldSource& f, const SampleGrid& grid, const PhysicalConstants& k);

// Field energy int (eps0 |E|^2 + mu0 |H|^2)/2 dV by quadrature, and the mode sum m(|q'|^2 + w^2 |q|^2)/2
double cavity_energy(const CavityModel& model, const ModeState& state, double t);
double mode_hamiltonian(const CavityModel& model, const ModeState& state, double t);

}  // namespace duplexem
