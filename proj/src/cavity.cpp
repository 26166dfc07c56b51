#include "duplexem/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "quad.hpp"

namespace duplexem {

ModeState ModeState::cosine(int n_modes, double amplitude) {
    ModeState s;
    s.modes.assign(static_cast<std::size_t>(n_modes), ModeCoeffs{0.5 * amplitude, 0.5 * amplitude});
    return s;
}

ModeState ModeState::random(int n_modes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ModeState s;
    for (int a = 0; a < n_modes; ++a) {
        const double r1 = u(rng), i1 = u(rng), r2 = u(rng), i2 = u(rng);
        s.modes.push_back({cplx(r1, i1), cplx(r2, i2)});
    }
    return s;
}

double CavityModel::omega(int alpha) const { return alpha * kPi * k.c / length; }
double CavityModel::wavenum(int alpha) const { return alpha * kPi / length; }
double CavityModel::m(int alpha) const {
    return mass.empty() ? 1.0 : mass[static_cast<std::size_t>(alpha - 1)];
}
double CavityModel::amp_e(int alpha) const {
    const double w = omega(alpha);
    return std::sqrt(2.0 * w * w * m(alpha) / (volume * k.eps0));
}
double CavityModel::amp_h(int alpha) const {
    const double w = omega(alpha);
    return std::sqrt(2.0 * w * w * m(alpha) / (volume * k.mu0));
}

void CavityModel::validate() const {
    if (!(length > 0) || !(volume > 0)) throw DomainError("cavity: length and volume must be positive");
    if (n_modes < 1) throw DomainError("cavity: n_modes must be >= 1");
    if (!mass.empty() && static_cast<int>(mass.size()) != n_modes)
        throw DomainError("cavity: mass list must have n_modes entries");
    for (double mm : mass)
        if (!(mm > 0)) throw DomainError("cavity: masses must be positive");
    if (!(k.c > 0) || !(k.eps0 > 0) || !(k.mu0 > 0) || !(k.hbar > 0) || !(k.lambda0 > 0))
        throw DomainError("cavity: physical constants must be positive");
}

Jet q_jet(const CavityModel& model, const ModeCoeffs& c, int alpha, double t) {
    const double w = model.omega(alpha);
    const cplx ep = std::exp(cplx(0, w * t));
    const cplx em = std::exp(cplx(0, -w * t));
    const cplx v = c.c1 * ep + c.c2 * em;
    const cplx d1 = cplx(0, w) * (c.c1 * ep - c.c2 * em);
    return {v, d1, -w * w * v};
}

Jet q_prime_jet(const CavityModel& model, const ModeCoeffs& c, int alpha, double t) {
    const double w = model.omega(alpha);
    const Jet q = q_jet(model, c, alpha, t);
    cplx v = -q.d1 / w;
    if (model.convention == Convention::definite) v += q_jet(model, c, alpha, 0.0).d1 / w;
    return {v, w * q.v, w * q.d1};
}

Jet q_second_jet(const CavityModel& model, const ModeCoeffs& c, int alpha, double t) {
    const Jet q = q_jet(model, c, alpha, t);
    if (model.convention == Convention::secular_free) return {-q.v, -q.d1, -q.d2};
    const Jet q0 = q_jet(model, c, alpha, 0.0);
    return {-q.v + q0.v + q0.d1 * t, -q.d1 + q0.d1, -q.d2};
}

bool has_secular_term(const CavityModel& model, const ModeCoeffs& c) {
    return model.convention == Convention::definite && std::abs(c.c1 - c.c2) > 0.0;
}

static void check_z(const CavityModel& model, double z) {
    if (!(z >= 0.0 && z <= model.length)) throw DomainError("z outside [0, L]");
}

static void check_state(const CavityModel& model, const ModeState& state) {
    if (static_cast<int>(state.modes.size()) != model.n_modes)
        throw DomainError("mode state size does not match n_modes");
}

FieldJet first_solution_jet(const CavityModel& model, const ModeState& state, double z, double t) {
    check_z(model, z);
    check_state(model, state);
    FieldJet j;
    for (int a = 1; a <= model.n_modes; ++a) {
        const Jet q = q_jet(model, state.modes[static_cast<std::size_t>(a - 1)], a, t);
        const double kk = model.wavenum(a);
        const double s = std::sin(kk * z), c = std::cos(kk * z);
        const double ae = model.amp_e(a);
        const double ah = ae * model.k.eps0 / kk;
        j.f.e[0] += ae * q.v * s;
        j.f.h[1] += ah * q.d1 * c;
        j.dz.e[0] += ae * q.v * kk * c;
        j.dz.h[1] += -ah * q.d1 * kk * s;
        j.dt.e[0] += ae * q.d1 * s;
        j.dt.h[1] += ah * q.d2 * c;
    }
    return j;
}

FieldJet second_solution_jet(const CavityModel& model, const ModeState& state, double z, double t) {
    check_z(model, z);
    check_state(model, state);
    FieldJet j;
    for (int a = 1; a <= model.n_modes; ++a) {
        const ModeCoeffs& mc = state.modes[static_cast<std::size_t>(a - 1)];
        const Jet q1 = q_prime_jet(model, mc, a, t);
        const Jet q2 = q_second_jet(model, mc, a, t);
        const double kk = model.wavenum(a);
        const double s = std::sin(kk * z), c = std::cos(kk * z);
        const double ae = model.amp_e(a);
        const double ah = model.amp_h(a);
        j.f.e[0] += ae * q2.v * s;
        j.f.h[1] += ah * q1.v * c;
        j.dz.e[0] += ae * q2.v * kk * c;
        j.dz.h[1] += -ah * q1.v * kk * s;
        j.dt.e[0] += ae * q2.d1 * s;
        j.dt.h[1] += ah * q1.d1 * c;
    }
    return j;
}

FieldPair field_first_solution(const CavityModel& model, const ModeState& state, double z, double t) {
    return first_solution_jet(model, state, z, t).f;
}

FieldPair field_second_solution(const CavityModel& model, const ModeState& state, double z, double t) {
    return second_solution_jet(model, state, z, t).f;
}

FieldSource first_solution_source(const CavityModel& model, const ModeState& state) {
    return [model, state](double z, double t) { return first_solution_jet(model, state, z, t); };
}

FieldSource second_solution_source(const CavityModel& model, const ModeState& state) {
    return [model, state](double z, double t) { return second_solution_jet(model, state, z, t); };
}

static FieldPair rotate_pair(const FieldPair& f, double c, double s) {
    return {cplx(c) * f.e + cplx(s) * f.h, cplx(c) * f.h - cplx(s) * f.e};
}

FieldSource dual_rotated_source(FieldSource src, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return [src = std::move(src), c, s](double z, double t) {
        const FieldJet j = src(z, t);
        return FieldJet{rotate_pair(j.f, c, s), rotate_pair(j.dz, c, s), rotate_pair(j.dt, c, s)};
    };
}

FieldSource scaled_h_source(FieldSource src, double factor) {
    return [src = std::move(src), factor](double z, double t) {
        FieldJet j = src(z, t);
        j.f.h = cplx(factor) * j.f.h;
        j.dz.h = cplx(factor) * j.dz.h;
        j.dt.h = cplx(factor) * j.dt.h;
        return j;
    };
}

SampleGrid SampleGrid::cavity(const CavityModel& model, int nz, int nt) {
    SampleGrid g;
    g.z0 = 0.0;
    g.z1 = model.length;
    g.t0 = 0.0;
    g.t1 = model.period();
    g.nz = nz;
    g.nt = nt;
    return g;
}

static void check_resolution(double wavelength, double period, const SampleGrid& grid) {
    if (grid.nz < 1 || grid.nt < 1) throw DomainError("grid needs at least one point per axis");
    if (wavelength > 0 && grid.z1 > grid.z0) {
        const double dz = (grid.z1 - grid.z0) / std::max(1, grid.nz - 1);
        if (grid.nz < 2 || wavelength / dz < 4.0 - 1e-12)
            throw DomainError("grid too coarse: fewer than 4 points per shortest wavelength");
    }
    if (period > 0 && grid.t1 > grid.t0) {
        const double dt = (grid.t1 - grid.t0) / std::max(1, grid.nt - 1);
        if (grid.nt < 2 || period / dt < 4.0 - 1e-12)
            throw DomainError("grid too coarse: fewer than 4 points per shortest period");
    }
}

void validate_grid(const CavityModel& model, const SampleGrid& grid) {
    const double lambda = 2.0 * model.length / model.n_modes;
    const double period = 2.0 * kPi / model.omega(model.n_modes);
    check_resolution(lambda, period, grid);
}

QuaternionField assemble_quaternion_field(const std::array<FieldSource, 4>& components,
                                          const std::array<Domain, 4>& domains) {
    for (std::size_t s = 1; s < 4; ++s)
        if (!(domains[s] == domains[0])) throw DomainError("assemble_quaternion_field: mismatched domains");
    QuaternionField q;
    for (std::size_t s = 0; s < 4; ++s) {
        q.sector[s] = components[s] ? components[s] : FieldSource([](double, double) { return FieldJet{}; });
    }
    q.z_min = domains[0].z_min;
    q.z_max = domains[0].z_max;
    q.t_min = domains[0].t_min;
    q.t_max = domains[0].t_max;
    return q;
}

PackedQuaternion evaluate_packed(const QuaternionField& q, double z, double t) {
    std::array<FieldPair, 4> v;
    for (std::size_t s = 0; s < 4; ++s) v[s] = q.sector[s](z, t).f;
    const cplx I(0, 1);
    PackedQuaternion p;
    for (std::size_t ax = 0; ax < 3; ++ax) {
        p.e[ax] = {v[0].e[ax] - I * v[1].e[ax], v[2].e[ax] - I * v[3].e[ax]};
        p.h[ax] = {v[0].h[ax] - I * v[1].h[ax], v[2].h[ax] - I * v[3].h[ax]};
    }
    return p;
}

static double p_sign(ParityLabel l) {
    return (l == ParityLabel::p_odd_t_even || l == ParityLabel::p_odd_t_odd) ? -1.0 : 1.0;
}
static double t_sign(ParityLabel l) {
    return (l == ParityLabel::p_odd_t_even || l == ParityLabel::p_even_t_even) ? 1.0 : -1.0;
}

double parity_deviation(const QuaternionField& q, const SampleGrid& grid) {
    double dev = 0.0;
    for (std::size_t s = 0; s < 4; ++s) {
        const double ps = p_sign(q.label[s]);
        const double ts = t_sign(q.label[s]);
        for (int i = 0; i < grid.nz; ++i)
            for (int j = 0; j < grid.nt; ++j) {
                const double z = grid.z(i), t = grid.t(j);
                const FieldPair f = q.sector[s](z, t).f;
                const FieldPair fr = q.sector[s](q.z_min + q.z_max - z, t).f;
                const FieldPair ft = q.sector[s](z, -t).f;
                for (std::size_t ax = 0; ax < 3; ++ax) {
                    dev = std::max(dev, std::abs(fr.e[ax] - ps * f.e[ax]));
                    dev = std::max(dev, std::abs(fr.h[ax] + ps * f.h[ax]));
                    dev = std::max(dev, std::abs(ft.e[ax] - ts * f.e[ax]));
                    dev = std::max(dev, std::abs(ft.h[ax] + ts * f.h[ax]));
                }
            }
    }
    return dev;
}

// curl of a field depending on z only: (-d_z F_y, d_z F_x, 0)
static Vec3c curl_z(const Vec3c& dz) { return {-dz[1], dz[0], 0.0}; }

static double vmax(const Vec3c& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }

std::array<double, 4> maxwell_residual(const QuaternionField& q, const std::array<SectorSources, 4>* sources,
                                       const SampleGrid& grid, const PhysicalConstants& k) {
    check_resolution(q.shortest_wavelength, q.shortest_period, grid);
    std::array<double, 4> r{0, 0, 0, 0};
    for (std::size_t s = 0; s < 4; ++s) {
        const SectorSources* src = sources ? &(*sources)[s] : nullptr;
        for (int i = 0; i < grid.nz; ++i)
            for (int j = 0; j < grid.nt; ++j) {
                const double z = grid.z(i), t = grid.t(j);
                const FieldJet f = q.sector[s](z, t);
                Vec3c r1 = curl_z(f.dz.e) + cplx(k.mu0) * f.dt.h;
                Vec3c r2 = curl_z(f.dz.h) - cplx(k.eps0) * f.dt.e;
                cplx r3 = f.dz.e[2];
                cplx r4 = f.dz.h[2];
                if (src) {
                    if (src->j_g) r1 = r1 + src->j_g(z, t);
                    if (src->j_e) r2 = r2 - src->j_e(z, t);
                    if (src->rho_e) r3 -= src->rho_e(z, t);
                    if (src->rho_g) r4 -= src->rho_g(z, t);
                }
                r[0] = std::max(r[0], vmax(r1));
                r[1] = std::max(r[1], vmax(r2));
                r[2] = std::max(r[2], std::abs(r3));
                r[3] = std::max(r[3], std::abs(r4));
            }
    }
    return r;
}

QuaternionField single_sector(FieldSource f, double shortest_wavelength, double shortest_period) {
    QuaternionField q;
    q.sector[0] = std::move(f);
    for (std::size_t s = 1; s < 4; ++s) q.sector[s] = [](double, double) { return FieldJet{}; };
    q.shortest_wavelength = shortest_wavelength;
    q.shortest_period = shortest_period;
    return q;
}

std::array<double, 4> maxwell_residual(const FieldSource& f, const SampleGrid& grid, const PhysicalConstants& k) {
    return maxwell_residual(single_sector(f), nullptr, grid, k);
}

std::array<double, 4> maxwell_residual(const CavityModel& model, const FieldSource& f, const SampleGrid& grid) {
    validate_grid(model, grid);
    return maxwell_residual(f, grid, model.k);
}

double cauchy_riemann_residual(const FieldSource& f, const SampleGrid& grid, const PhysicalConstants& k) {
    const double se = std::sqrt(k.eps0), sm = std::sqrt(k.mu0);
    double r = 0.0;
    for (int i = 0; i < grid.nz; ++i)
        for (int j = 0; j < grid.nt; ++j) {
            const FieldJet jt = f(grid.z(i), grid.t(j));
            // U = sqrt(mu0) H_y, V = -sqrt(eps0) E_x, tau = c t
            const cplx u_z = sm * jt.dz.h[1];
            const cplx u_tau = sm * jt.dt.h[1] / k.c;
            const cplx v_z = -se * jt.dz.e[0];
            const cplx v_tau = -se * jt.dt.e[0] / k.c;
            r = std::max(r, std::abs(u_z - v_tau));
            r = std::max(r, std::abs(u_tau + v_z));
        }
    return r;
}

double cavity_energy(const CavityModel& model, const ModeState& state, double t) {
    const auto integrand = [&](double z) -> cplx {
        const FieldPair f = field_first_solution(model, state, std::clamp(z, 0.0, model.length), t);
        return 0.5 * (model.k.eps0 * norm2(f.e) + model.k.mu0 * norm2(f.h));
    };
    return detail::gl_integrate(integrand, 0.0, model.length, model.n_modes).real() * model.area();
}

double mode_hamiltonian(const CavityModel& model, const ModeState& state, double t) {
    check_state(model, state);
    double h = 0.0;
    for (int a = 1; a <= model.n_modes; ++a) {
        const Jet q = q_jet(model, state.modes[static_cast<std::size_t>(a - 1)], a, t);
        const double w = model.omega(a);
        h += 0.5 * model.m(a) * (std::norm(q.d1) + w * w * std::norm(q.v));
    }
    return h;
}

}  // namespace duplexem
