#include "duplexem/currents.hpp"

#include <algorithm>
#include <cmath>

#include "quad.hpp"

namespace duplexem {

namespace {

struct Spatial {
    cplx s, d1, d2;
};

Spatial spatial(const ModeFunctionTerm& m, double z) {
    const double kz = m.k * z;
    switch (m.kind) {
        case SpatialKind::sin:
            return {std::sin(kz), m.k * std::cos(kz), -m.k * m.k * std::sin(kz)};
        case SpatialKind::cos:
            return {std::cos(kz), -m.k * std::sin(kz), -m.k * m.k * std::cos(kz)};
        case SpatialKind::expi: {
            const cplx e = std::exp(cplx(0, kz));
            return {e, cplx(0, m.k) * e, -m.k * m.k * e};
        }
    }
    return {};
}

Spatial temporal(const ModeFunctionTerm& m, double t) {
    const double w = m.omega;
    const cplx ep = std::exp(cplx(0, w * t)), em = std::exp(cplx(0, -w * t));
    const cplx osc = m.a1 * ep + m.a2 * em;
    return {osc + m.b0 + m.b1 * t, cplx(0, w) * (m.a1 * ep - m.a2 * em) + m.b1, -w * w * osc};
}

}  // namespace

UJet FieldFunctionSet::eval(int sector, int mode, double z, double t) const {
    UJet u;
    const cplx g = std::polar(gauge_beta, gauge_alpha);
    for (const auto& m : terms) {
        if (m.sector != sector || m.mode != mode) continue;
        const Spatial s = spatial(m, z);
        const Spatial T = temporal(m, t);
        const cplx a = m.amp * g;
        u.v += a * s.s * T.s;
        u.dz += a * s.d1 * T.s;
        u.dt += a * s.s * T.d1;
        u.dzz += a * s.d2 * T.s;
        u.dtt += a * s.s * T.d2;
    }
    return u;
}

FieldFunctionSet make_fieldset(const CavityModel& model, const ModeState& state, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("make_fieldset: sign must be +1 or -1");
    if (static_cast<int>(state.modes.size()) != model.n_modes) throw DomainError("mode state size mismatch");
    FieldFunctionSet fs;
    fs.n_modes = model.n_modes;
    fs.area = model.area();
    fs.c = model.k.c;
    fs.z_min = 0.0;
    fs.z_max = model.length;
    const cplx si(0.0, sign);
    const cplx I(0, 1);
    for (int a = 1; a <= model.n_modes; ++a) {
        const ModeCoeffs& mc = state.modes[static_cast<std::size_t>(a - 1)];
        const double w = model.omega(a), kk = model.wavenum(a);
        const Jet q0 = q_jet(model, mc, a, 0.0);
        ModeFunctionTerm u1{1, a, SpatialKind::sin, kk, w, std::sqrt(model.k.eps0) * model.amp_e(a)};
        u1.a1 = (1.0 - si) * mc.c1;
        u1.a2 = (1.0 - si) * mc.c2;
        ModeFunctionTerm u2{2, a, SpatialKind::cos, kk, w, std::sqrt(model.k.mu0) * model.amp_h(a)};
        // (1 +- i) q_dot / w with q_dot / w = i (C1 e^{iwt} - C2 e^{-iwt})
        u2.a1 = (1.0 + si) * I * mc.c1;
        u2.a2 = -(1.0 + si) * I * mc.c2;
        if (model.convention == Convention::definite) {
            u1.b0 = si * q0.v;
            u1.b1 = si * q0.d1;
            u2.b0 = -q0.d1 / w;
        }
        fs.terms.push_back(u1);
        fs.terms.push_back(u2);
    }
    return fs;
}

FieldFunctionSet plane_wave_fieldset(double k, double omega, double c, cplx amp, double length) {
    FieldFunctionSet fs;
    fs.n_modes = 1;
    fs.c = c;
    fs.z_max = length;
    ModeFunctionTerm u{1, 1, SpatialKind::expi, k, omega, amp};
    u.a2 = 1.0;
    fs.terms.push_back(u);
    return fs;
}

FieldFunctionSet gauge_transform(const FieldFunctionSet& fs, double alpha, double beta) {
    if (!(beta > 0)) throw DomainError("gauge_transform: beta must be positive");
    FieldFunctionSet r = fs;
    r.gauge_alpha += alpha;
    r.gauge_beta *= beta;
    return r;
}

FieldFunctionSet dual_rotate_fieldset(const FieldFunctionSet& fs, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    FieldFunctionSet r = fs;
    r.terms.clear();
    for (const auto& m : fs.terms) {
        ModeFunctionTerm same = m, other = m;
        same.amp = m.amp * c;
        other.sector = m.sector == 1 ? 2 : 1;
        other.amp = m.sector == 1 ? -s * m.amp : s * m.amp;
        r.terms.push_back(same);
        r.terms.push_back(other);
    }
    return r;
}

FieldFunctionSet drop_sector(const FieldFunctionSet& fs, int sector) {
    FieldFunctionSet r = fs;
    r.terms.clear();
    for (const auto& m : fs.terms)
        if (m.sector != sector) r.terms.push_back(m);
    return r;
}

FourCurrent classical_current(const CavityModel& model, const ModeState& state, int sign, double z, double t) {
    if (sign != 1 && sign != -1) throw DomainError("classical_current: sign must be +1 or -1");
    if (model.convention != Convention::secular_free)
        throw DomainError("classical_current: closed forms need the secular-free convention");
    if (static_cast<int>(state.modes.size()) != model.n_modes) throw DomainError("mode state size mismatch");
    const double c = model.k.c;
    const cplx pre = cplx(0, 8.0 * model.k.e_charge / (model.k.hbar * c * c * model.volume));
    FourCurrent j;
    for (int a = 1; a <= model.n_modes; ++a) {
        const ModeCoeffs& mc = state.modes[static_cast<std::size_t>(a - 1)];
        const double w = model.omega(a), kk = model.wavenum(a);
        const double mw3 = model.m(a) * w * w * w;
        const cplx P = mc.c1 * std::conj(mc.c2) * std::exp(cplx(0, 2 * w * t));
        j.j3_2 += -pre * mw3 * std::sin(2 * kk * z) * (P + std::conj(P));
        j.j4_1 += pre * mw3 * (std::norm(mc.c1) - std::norm(mc.c2));
        j.j4_2 += pre * mw3 * std::cos(2 * kk * z) * (P - std::conj(P));
    }
    return j;
}

CurrentJet current_jet(const FieldFunctionSet& fs, const PhysicalConstants& k, double z, double t) {
    const double c = fs.c;
    const cplx mi_pre(0, -k.e_charge / (k.hbar * c));  // -(i e / hbar c)
    CurrentJet r;
    for (int s = 1; s <= 2; ++s)
        for (int a = 1; a <= fs.n_modes; ++a) {
            const UJet u = fs.eval(s, a, z, t);
            const cplx uc = std::conj(u.v);
            // d4 u* = -(i/c) du*/dt
            const cplx d4 = cplx(0, -1.0 / c);
            r.j.j3_1 += mi_pre * (std::conj(u.dz) * u.v - u.dz * uc);
            r.j.j4_1 += mi_pre * d4 * (std::conj(u.dt) * u.v - u.dt * uc);
            r.j.j3_2 += mi_pre * 2.0 * (std::conj(u.dz) * u.v).real();
            r.j.j4_2 += mi_pre * d4 * 2.0 * (std::conj(u.dt) * u.v).real();
            r.dz_j3_1 += mi_pre * (std::conj(u.dzz) * u.v - u.dzz * uc);
            r.dt_j4_1 += mi_pre * d4 * (std::conj(u.dtt) * u.v - u.dtt * uc);
            r.dz_j3_2 += mi_pre * 2.0 * ((std::conj(u.dzz) * u.v).real() + std::norm(u.dz));
            r.dt_j4_2 += mi_pre * d4 * 2.0 * ((std::conj(u.dtt) * u.v).real() + std::norm(u.dt));
        }
    return r;
}

FourCurrent current_general(const FieldFunctionSet& fs, const PhysicalConstants& k, double z, double t) {
    return current_jet(fs, k, z, t).j;
}

double continuity_residual(const CurrentSource& src, const SampleGrid& grid, double c) {
    const cplx d4(0, -1.0 / c);
    double r = 0.0;
    for (int i = 0; i < grid.nz; ++i)
        for (int j = 0; j < grid.nt; ++j) {
            const CurrentJet cj = src(grid.z(i), grid.t(j));
            r = std::max(r, std::abs(cj.dz_j3_1 + d4 * cj.dt_j4_1));
            r = std::max(r, std::abs(cj.dz_j3_2 + d4 * cj.dt_j4_2));
        }
    return r;
}

double continuity_residual(const FieldFunctionSet& fs, const PhysicalConstants& k, const SampleGrid& grid,
                           const CavityModel* model) {
    if (model) validate_grid(*model, grid);
    return continuity_residual([&](double z, double t) { return current_jet(fs, k, z, t); }, grid, fs.c);
}

double continuity_scale(const FieldFunctionSet& fs, const PhysicalConstants& k, const SampleGrid& grid) {
    double r = 0.0;
    for (int i = 0; i < grid.nz; ++i)
        for (int j = 0; j < grid.nt; ++j) {
            const CurrentJet cj = current_jet(fs, k, grid.z(i), grid.t(j));
            r = std::max({r, std::abs(cj.dz_j3_1), std::abs(cj.dz_j3_2), std::abs(cj.dt_j4_1) / fs.c,
                          std::abs(cj.dt_j4_2) / fs.c});
        }
    return r;
}

static cplx integrate_z(const FieldFunctionSet& fs, double z0, double z1, const std::function<cplx(double)>& f) {
    return detail::gl_integrate(f, z0, z1, std::max(2, 2 * fs.n_modes)) * fs.area;
}

NoetherCharge noether_charge(const FieldFunctionSet& fs, double t) { return noether_charge(fs, t, fs.z_min, fs.z_max); }

NoetherCharge noether_charge(const FieldFunctionSet& fs, double t, double z0, double z1) {
    const cplx v = integrate_z(fs, z0, z1, [&](double z) {
        double q1 = 0.0, q2 = 0.0;
        for (int s = 1; s <= 2; ++s)
            for (int a = 1; a <= fs.n_modes; ++a) {
                const UJet u = fs.eval(s, a, z, t);
                const cplx p = std::conj(u.v) * u.dt;
                q1 += p.imag();
                q2 += p.real();
            }
        return cplx(2.0 * q1 / fs.c, 2.0 * q2 / fs.c);
    });
    NoetherCharge q;
    q.q1 = v.real();
    q.q2 = v.imag();
    q.q = v;
    q.alpha = fs.gauge_alpha;
    q.beta = fs.gauge_beta;
    return q;
}

cplx q2_analytic_form(const FieldFunctionSet& fs, double t, double z0, double z1) {
    const cplx d4(0, -1.0 / fs.c);
    return integrate_z(fs, z0, z1, [&](double z) {
        cplx acc = 0.0;
        for (int s = 1; s <= 2; ++s)
            for (int a = 1; a <= fs.n_modes; ++a) {
                const UJet u = fs.eval(s, a, z, t);
                acc += d4 * std::conj(u.dt) * u.v + d4 * u.dt * std::conj(u.v);
            }
        return acc;
    });
}

double lagrange_residual(const FieldFunctionSet& fs, double z, double t) {
    double r = 0.0;
    for (int s = 1; s <= 2; ++s)
        for (int a = 1; a <= fs.n_modes; ++a) {
            const UJet u = fs.eval(s, a, z, t);
            r = std::max(r, std::abs(u.dzz - u.dtt / (fs.c * fs.c) - fs.k_lagrange * u.v));
        }
    return r;
}

double spirality_density(const FieldFunctionSet& fs, double z, double t) {
    cplx acc = 0.0;
    for (int a = 1; a <= fs.n_modes; ++a) {
        const UJet u1 = fs.eval(1, a, z, t);
        const UJet u2 = fs.eval(2, a, z, t);
        acc += std::conj(u1.dt) * u2.v - std::conj(u2.dt) * u1.v;
    }
    // bracket + c.c. with d4 = -(i/c) d/dt
    return 2.0 * acc.imag() / fs.c;
}

SpinDensity spirality(const FieldFunctionSet& fs, double t) { return spirality(fs, t, fs.z_min, fs.z_max); }

SpinDensity spirality(const FieldFunctionSet& fs, double t, double z0, double z1) {
    SpinDensity s;
    s.s4_12 = spirality_density(fs, z0, t);
    s.s4_3 = integrate_z(fs, z0, z1, [&](double z) { return cplx(spirality_density(fs, z, t)); }).real();
    return s;
}

double charge_ratio_estimate(double j_e, double j_h) {
    if (!(j_e > 0) || !(j_h > 0)) throw DomainError("charge_ratio_estimate: J_E and J_H must be positive");
    return std::sqrt(j_e / j_h);
}

namespace {

// Per-mode operator currents; dz selects the analytic z-derivative of the spatial factors.
QuantizedCurrentMode mode_current(const CavityModel& model, int alpha, const Mat& a, const Mat& ad, double z, int sign,
                                  ImJ4Prefactor pref, bool dz) {
    const cplx I(0, 1);
    const double c = model.k.c, V = model.volume, e = model.k.e_charge;
    const double w = model.omega(alpha), kk = model.wavenum(alpha);
    const double s2 = dz ? 2 * kk * std::cos(2 * kk * z) : std::sin(2 * kk * z);
    const double c2 = dz ? -2 * kk * std::sin(2 * kk * z) : std::cos(2 * kk * z);
    const Mat app = -a, appd = -ad;
    const int d = static_cast<int>(a.rows());
    const Mat id = Mat::Identity(d, d);
    QuantizedCurrentMode q;
    const Mat A = I * (app - appd) - static_cast<double>(sign) * (a - ad);
    const Mat absA = A.adjoint() * A;
    q.re_j3 = (I * e / (2 * c * V)) * kk * w * s2 * (absA + I * I * absA);
    q.im_j3 = (-2.0 * I * e / (c * V)) * kk * w * s2 * (a * a + ad * ad + app * app + appd * appd);
    q.re_j4 = dz ? Mat::Zero(d, d)
                 : Mat(static_cast<double>(sign) * (2 * e / (c * c * V)) * kk * w * w *
                       (anticommutator(app, ad) - anticommutator(a, appd)));
    const cplx osc = pref == ImJ4Prefactor::consistent ? 2.0 * I * e / (c * V) * kk * w
                                                       : 2.0 * I * e / (c * c * V) * kk * w * w;
    q.im_j4 = osc * c2 * (ad * ad - a * a + appd * appd - app * app);
    if (!dz) q.im_j4 += (2.0 * I * e / (c * c * V)) * (-2.0 * w * w) * id;
    return q;
}

}  // namespace

std::vector<QuantizedCurrentMode> quantized_current(const CavityModel& model, Scheme scheme, int dim, double z,
                                                    double t, int sign, ImJ4Prefactor pref) {
    if (scheme != Scheme::time_local) throw DomainError("quantized_current: only the time-local scheme is supported");
    if (dim < 3) throw DomainError("quantized_current: dim must be >= 3");
    const auto lad = time_local_operators(model, dim, t);
    std::vector<QuantizedCurrentMode> out;
    for (int a = 1; a <= model.n_modes; ++a) {
        const auto& l = lad[static_cast<std::size_t>(a - 1)];
        out.push_back(mode_current(model, a, l.a.m, l.adag.m, z, sign, pref, false));
    }
    return out;
}

QuantizedContinuity quantized_continuity(const CavityModel& model, int dim, const SampleGrid& grid, int sign,
                                         ImJ4Prefactor pref) {
    if (dim < 3) throw DomainError("quantized_continuity: dim must be >= 3");
    const std::vector<int> keep = safe_indices(dim);
    const cplx I(0, 1);
    const double c = model.k.c, hbar = model.k.hbar;
    QuantizedContinuity r;
    for (int j = 0; j < grid.nt; ++j) {
        const double t = grid.t(j);
        const auto lad = time_local_operators(model, dim, t);
        for (int a = 1; a <= model.n_modes; ++a) {
            const auto& l = lad[static_cast<std::size_t>(a - 1)];
            const Mat H = time_local_hamiltonian(model, a, dim).m;
            const Mat zero = Mat::Zero(dim, dim);
            for (int i = 0; i < grid.nz; ++i) {
                const double z = grid.z(i);
                const QuantizedCurrentMode J = mode_current(model, a, l.a.m, l.adag.m, z, sign, pref, false);
                const QuantizedCurrentMode Jz = mode_current(model, a, l.a.m, l.adag.m, z, sign, pref, true);
                // d/dt X = (1/(i hbar)) [X, H];  d4 = (1/(i c)) d/dt
                const Mat dt_im4 = commutator(J.im_j4, H) / (I * hbar);
                const Mat dt_re4 = commutator(J.re_j4, H) / (I * hbar);
                r.im_residual = std::max(r.im_residual, restricted_max_diff(Jz.im_j3 + dt_im4 / (I * c), zero, keep));
                r.re_residual = std::max(r.re_residual, restricted_max_diff(Jz.re_j3 + dt_re4 / (I * c), zero, keep));
                r.re_j3_norm = std::max(r.re_j3_norm, restricted_max_diff(J.re_j3, zero, keep));
                r.re_j4_norm = std::max(r.re_j4_norm, restricted_max_diff(J.re_j4, zero, keep));
            }
        }
    }
    return r;
}

QuantizedContinuity quantized_continuity_fd(const CavityModel& model, int dim, const SampleGrid& grid, double h,
                                            int sign) {
    if (dim < 3) throw DomainError("quantized_continuity_fd: dim must be >= 3");
    const std::vector<int> keep = safe_indices(dim);
    const cplx I(0, 1);
    const double c = model.k.c;
    QuantizedContinuity r;
    const auto cur = [&](double z, double t) { return quantized_current(model, Scheme::time_local, dim, z, t, sign); };
    for (int j = 0; j < grid.nt; ++j)
        for (int i = 0; i < grid.nz; ++i) {
            const double z = std::clamp(grid.z(i), h, model.length - h), t = grid.t(j);
            const auto zp = cur(z + h, t), zm = cur(z - h, t), tp = cur(z, t + h), tm = cur(z, t - h);
            for (std::size_t a = 0; a < zp.size(); ++a) {
                const Mat dz3 = (zp[a].im_j3 - zm[a].im_j3) / (2 * h);
                const Mat dt4 = (tp[a].im_j4 - tm[a].im_j4) / (2 * h);
                const Mat dt4r = (tp[a].re_j4 - tm[a].re_j4) / (2 * h);
                const Mat zero = Mat::Zero(dim, dim);
                r.im_residual = std::max(r.im_residual, restricted_max_diff(dz3 + dt4 / (I * c), zero, keep));
                r.re_residual = std::max(r.re_residual, restricted_max_diff(dt4r / (I * c), zero, keep));
            }
        }
    return r;
}

}  // namespace duplexem
