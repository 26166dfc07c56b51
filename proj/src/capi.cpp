#include "duplexem/duplexem.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "duplexem/cavity.hpp"
#include "duplexem/currents.hpp"
#include "duplexem/dualsym.hpp"
#include "duplexem/elliptic.hpp"
#include "duplexem/fockquant.hpp"
#include "duplexem/resonance.hpp"
#include "duplexem/sshliquid.hpp"
#include "duplexem/verify.hpp"

using namespace duplexem;

struct dx_cavity {
    CavityModel model;
    ModeState state;
};

struct dx_operator {
    Mat m;
};

struct dx_gap_solution {
    GapSolution sol;
};

namespace {

thread_local std::string g_last_error;

dx_status fail(dx_status s, const char* msg) {
    g_last_error = msg;
    return s;
}

template <class F>
dx_status guarded(F&& f) {
    try {
        g_last_error.clear();
        return f();
    } catch (const DomainError& e) {
        return fail(DX_ERR_DOMAIN, e.what());
    } catch (const NumericError& e) {
        return fail(DX_ERR_NUMERIC, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(DX_ERR_DOMAIN, e.what());
    } catch (const std::bad_alloc&) {
        return fail(DX_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(DX_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(DX_ERR_INTERNAL, "unknown error");
    }
}

#define DX_REQUIRE(p) \
    if (!(p)) return fail(DX_ERR_NULL, "null argument: " #p)

cplx to_cpp(dx_complex c) { return {c.re, c.im}; }
dx_complex to_c(cplx c) { return {c.real(), c.imag()}; }

FieldPair to_cpp(const dx_field_pair& f) {
    FieldPair r;
    for (int i = 0; i < 3; ++i) {
        r.e[i] = to_cpp(f.e[i]);
        r.h[i] = to_cpp(f.h[i]);
    }
    return r;
}

dx_field_pair to_c(const FieldPair& f) {
    dx_field_pair r;
    for (int i = 0; i < 3; ++i) {
        r.e[i] = to_c(f.e[i]);
        r.h[i] = to_c(f.h[i]);
    }
    return r;
}

PhysicalConstants to_cpp(const dx_constants* k) {
    if (!k) return PhysicalConstants::natural();
    PhysicalConstants r;
    r.c = k->c;
    r.eps0 = k->eps0;
    r.mu0 = k->mu0;
    r.hbar = k->hbar;
    r.lambda0 = k->lambda0;
    r.e_charge = k->e_charge;
    return r;
}

void to_c(const PhysicalConstants& k, dx_constants* out) {
    *out = {k.c, k.eps0, k.mu0, k.hbar, k.lambda0, k.e_charge};
}

SshParams to_cpp(const dx_ssh_params& p) {
    SshParams r;
    r.t0 = p.t0;
    r.alpha1 = p.alpha1;
    r.alpha2 = p.alpha2;
    r.u = p.u;
    r.K_spring = p.K_spring;
    r.a = p.a;
    r.M_eff = p.M_eff;
    r.N = p.N;
    return r;
}

Occupation occupation(double n_c, double n_v) {
    if (!(n_c >= 0 && n_c <= 1 && n_v >= 0 && n_v <= 1)) throw DomainError("occupations must lie in [0, 1]");
    return {n_c, n_v};
}

void check_alpha(const dx_cavity* c, int alpha) {
    if (alpha < 1 || alpha > c->model.n_modes) throw DomainError("mode index out of range");
}

void check_sign(int sign) {
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
}

dx_status buffer_too_small(size_t need, size_t have, size_t* count) {
    if (count) *count = need;
    if (have < need) return fail(DX_ERR_BUFFER, "buffer too small");
    return DX_OK;
}

}  // namespace

extern "C" {

const char* dx_last_error(void) { return g_last_error.c_str(); }

const char* dx_status_string(dx_status s) {
    switch (s) {
        case DX_OK: return "ok";
        case DX_ERR_NULL: return "null argument";
        case DX_ERR_DOMAIN: return "domain error";
        case DX_ERR_CONFIG: return "configuration error";
        case DX_ERR_NUMERIC: return "numerical failure";
        case DX_ERR_BUFFER: return "buffer too small";
        case DX_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* dx_version(void) { return "1.0.0"; }

void dx_constants_natural(dx_constants* out) {
    if (out) to_c(PhysicalConstants::natural(), out);
}

void dx_constants_si(dx_constants* out) {
    if (out) to_c(PhysicalConstants::si(), out);
}

/* ---- dual symmetry ---- */

dx_status dx_dual_rotate(const dx_field_pair* in, double theta, dx_field_pair* out) {
    DX_REQUIRE(in);
    DX_REQUIRE(out);
    return guarded([&] {
        *out = to_c(dual_rotate(to_cpp(*in), theta));
        return DX_OK;
    });
}

dx_status dx_hyperbolic_dual(const dx_field_pair* in, double vartheta, dx_field_pair* out) {
    DX_REQUIRE(in);
    DX_REQUIRE(out);
    return guarded([&] {
        *out = to_c(hyperbolic_dual(to_cpp(*in), vartheta));
        return DX_OK;
    });
}

dx_status dx_hyperbolic_dual_axes(const dx_field_pair* in, double vartheta, const double axis[3], dx_field_pair* out) {
    DX_REQUIRE(in);
    DX_REQUIRE(axis);
    DX_REQUIRE(out);
    return guarded([&] {
        *out = to_c(hyperbolic_dual_axes(to_cpp(*in), vartheta, {axis[0], axis[1], axis[2]}));
        return DX_OK;
    });
}

dx_status dx_invariants_eval(const dx_field_pair* f, double theta, double vartheta, dx_invariants* out) {
    DX_REQUIRE(f);
    DX_REQUIRE(out);
    return guarded([&] {
        const InvariantSet s = invariants(to_cpp(*f), theta, vartheta);
        out->i1p = s.i1p;
        out->i2p = s.i2p;
        out->k_inv = s.k_inv;
        out->i1h = s.i1h;
        out->i2h = s.i2h;
        out->w_defined = s.w.has_value();
        out->w = s.w.value_or(std::numeric_limits<double>::quiet_NaN());
        return DX_OK;
    });
}

dx_status dx_lorentz_boost(const dx_field_pair* in, double beta, const double axis[3], int si_units,
                           const dx_constants* k, dx_field_pair* out) {
    DX_REQUIRE(in);
    DX_REQUIRE(out);
    return guarded([&] {
        const std::array<double, 3> ax = axis ? std::array<double, 3>{axis[0], axis[1], axis[2]}
                                              : std::array<double, 3>{0, 0, 1};
        *out = to_c(lorentz_boost_fields(to_cpp(*in), beta, ax, si_units ? UnitSystem::si : UnitSystem::symmetric,
                                         to_cpp(k)));
        return DX_OK;
    });
}

/* ---- cavity ---- */

dx_status dx_cavity_create(double length, double volume, int n_modes, const dx_constants* k, dx_convention convention,
                           dx_cavity** out) {
    DX_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        if (convention != DX_CONV_SECULAR_FREE && convention != DX_CONV_DEFINITE)
            return fail(DX_ERR_CONFIG, "unknown convention");
        auto c = std::make_unique<dx_cavity>();
        c->model.length = length;
        c->model.volume = volume;
        c->model.n_modes = n_modes;
        c->model.k = to_cpp(k);
        c->model.convention = convention == DX_CONV_DEFINITE ? Convention::definite : Convention::secular_free;
        c->model.validate();
        c->state = ModeState::cosine(n_modes);
        *out = c.release();
        return DX_OK;
    });
}

void dx_cavity_destroy(dx_cavity* c) { delete c; }

dx_status dx_cavity_set_mode(dx_cavity* c, int alpha, dx_complex c1, dx_complex c2) {
    DX_REQUIRE(c);
    return guarded([&] {
        check_alpha(c, alpha);
        c->state.modes[static_cast<std::size_t>(alpha - 1)] = {to_cpp(c1), to_cpp(c2)};
        return DX_OK;
    });
}

dx_status dx_cavity_set_mass(dx_cavity* c, int alpha, double m) {
    DX_REQUIRE(c);
    return guarded([&] {
        check_alpha(c, alpha);
        if (!(m > 0)) throw DomainError("mass must be positive");
        if (c->model.mass.empty()) c->model.mass.assign(static_cast<std::size_t>(c->model.n_modes), 1.0);
        c->model.mass[static_cast<std::size_t>(alpha - 1)] = m;
        return DX_OK;
    });
}

dx_status dx_cavity_randomize(dx_cavity* c, uint64_t seed) {
    DX_REQUIRE(c);
    return guarded([&] {
        c->state = ModeState::random(c->model.n_modes, seed);
        return DX_OK;
    });
}

dx_status dx_cavity_frequency(const dx_cavity* c, int alpha, double* omega, double* k) {
    DX_REQUIRE(c);
    return guarded([&] {
        check_alpha(c, alpha);
        if (omega) *omega = c->model.omega(alpha);
        if (k) *k = c->model.wavenum(alpha);
        return DX_OK;
    });
}

dx_status dx_cavity_field(const dx_cavity* c, int solution, double z, double t, dx_field_pair* out) {
    DX_REQUIRE(c);
    DX_REQUIRE(out);
    return guarded([&] {
        if (solution == 1) *out = to_c(field_first_solution(c->model, c->state, z, t));
        else if (solution == 2) *out = to_c(field_second_solution(c->model, c->state, z, t));
        else throw DomainError("solution must be 1 or 2");
        return DX_OK;
    });
}

dx_status dx_cavity_maxwell_residual(const dx_cavity* c, int solution, double dual_theta, int nz, int nt,
                                     double out[4]) {
    DX_REQUIRE(c);
    DX_REQUIRE(out);
    return guarded([&] {
        FieldSource src;
        if (solution == 1) src = first_solution_source(c->model, c->state);
        else if (solution == 2) src = second_solution_source(c->model, c->state);
        else throw DomainError("solution must be 1 or 2");
        if (dual_theta != 0.0) src = dual_rotated_source(src, dual_theta);
        const auto r = maxwell_residual(c->model, src, SampleGrid::cavity(c->model, nz, nt));
        for (int i = 0; i < 4; ++i) out[i] = r[static_cast<std::size_t>(i)];
        return DX_OK;
    });
}

dx_status dx_cavity_energy(const dx_cavity* c, double t, double* field_energy, double* mode_sum) {
    DX_REQUIRE(c);
    return guarded([&] {
        if (field_energy) *field_energy = cavity_energy(c->model, c->state, t);
        if (mode_sum) *mode_sum = mode_hamiltonian(c->model, c->state, t);
        return DX_OK;
    });
}

dx_status dx_cavity_secular(const dx_cavity* c, int* has_secular) {
    DX_REQUIRE(c);
    DX_REQUIRE(has_secular);
    return guarded([&] {
        *has_secular = 0;
        for (const auto& m : c->state.modes) *has_secular |= has_secular_term(c->model, m) ? 1 : 0;
        return DX_OK;
    });
}

/* ---- currents ---- */

static dx_current current_of(const FourCurrent& j) { return {to_c(j.j3_1), to_c(j.j3_2), to_c(j.j4_1), to_c(j.j4_2)}; }

dx_status dx_current_eval(const dx_cavity* c, int sign, double z, double t, dx_current* out) {
    DX_REQUIRE(c);
    DX_REQUIRE(out);
    return guarded([&] {
        check_sign(sign);
        *out = current_of(current_general(make_fieldset(c->model, c->state, sign), c->model.k, z, t));
        return DX_OK;
    });
}

dx_status dx_current_closed_form(const dx_cavity* c, int sign, double z, double t, dx_current* out) {
    DX_REQUIRE(c);
    DX_REQUIRE(out);
    return guarded([&] {
        *out = current_of(classical_current(c->model, c->state, sign, z, t));
        return DX_OK;
    });
}

dx_status dx_current_continuity(const dx_cavity* c, int sign, int nz, int nt, double* residual, double* scale) {
    DX_REQUIRE(c);
    return guarded([&] {
        check_sign(sign);
        const FieldFunctionSet fs = make_fieldset(c->model, c->state, sign);
        const SampleGrid g = SampleGrid::cavity(c->model, nz, nt);
        if (residual) *residual = continuity_residual(fs, c->model.k, g, &c->model);
        if (scale) *scale = continuity_scale(fs, c->model.k, g);
        return DX_OK;
    });
}

dx_status dx_noether_charge(const dx_cavity* c, int sign, double t, double* q1, double* q2) {
    DX_REQUIRE(c);
    return guarded([&] {
        check_sign(sign);
        const NoetherCharge q = noether_charge(make_fieldset(c->model, c->state, sign), t);
        if (q1) *q1 = q.q1;
        if (q2) *q2 = q.q2;
        return DX_OK;
    });
}

dx_status dx_spirality(const dx_cavity* c, int sign, double z, double t, double* density, double* integrated) {
    DX_REQUIRE(c);
    return guarded([&] {
        check_sign(sign);
        const FieldFunctionSet fs = make_fieldset(c->model, c->state, sign);
        if (density) *density = spirality_density(fs, z, t);
        if (integrated) *integrated = spirality(fs, t).s4_3;
        return DX_OK;
    });
}

dx_status dx_quantized_continuity(const dx_cavity* c, int dim, int nz, int nt, int literal_prefactor,
                                  double out[4]) {
    DX_REQUIRE(c);
    DX_REQUIRE(out);
    return guarded([&] {
        const QuantizedContinuity q =
            quantized_continuity(c->model, dim, SampleGrid::cavity(c->model, nz, nt), 1,
                                 literal_prefactor ? ImJ4Prefactor::literal : ImJ4Prefactor::consistent);
        out[0] = q.im_residual;
        out[1] = q.re_residual;
        out[2] = q.re_j3_norm;
        out[3] = q.re_j4_norm;
        return DX_OK;
    });
}

dx_status dx_charge_ratio(double j_e, double j_h, double* ratio) {
    DX_REQUIRE(ratio);
    return guarded([&] {
        *ratio = charge_ratio_estimate(j_e, j_h);
        return DX_OK;
    });
}

/* ---- operators ---- */

dx_status dx_operator_ladder(int dim, int create, dx_operator** out) {
    DX_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        const ModeLadder l = make_ladder(dim);
        *out = new dx_operator{create ? l.adag.m : l.a.m};
        return DX_OK;
    });
}

dx_status dx_operator_build(const dx_cavity* c, dx_op_kind kind, dx_scheme scheme, int alpha, int dim, double z,
                            double t, dx_operator** out) {
    DX_REQUIRE(c);
    DX_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        check_alpha(c, alpha);
        const auto idx = static_cast<std::size_t>(alpha - 1);
        Mat m;
        switch (kind) {
            case DX_OP_ANNIHILATE:
            case DX_OP_CREATE: {
                const auto l = time_local_operators(c->model, dim, t);
                m = kind == DX_OP_CREATE ? l[idx].adag.m : l[idx].a.m;
                break;
            }
            case DX_OP_HAMILTONIAN_TIME: m = time_local_hamiltonian(c->model, alpha, dim).m; break;
            case DX_OP_HAMILTONIAN_SPACE: m = space_local_hamiltonian(c->model, alpha, dim).m; break;
            case DX_OP_FIELD_E:
            case DX_OP_FIELD_H: {
                Scheme s;
                switch (scheme) {
                    case DX_SCHEME_TIME: s = Scheme::time_local; break;
                    case DX_SCHEME_SPACE: s = Scheme::space_local; break;
                    case DX_SCHEME_SPACETIME: s = Scheme::spacetime_local; break;
                    default: return fail(DX_ERR_CONFIG, "unknown scheme");
                }
                const OperatorField f = assemble_field_operators(c->model, s, dim, z, t);
                m = kind == DX_OP_FIELD_E ? f.e[idx].m : f.h[idx].m;
                break;
            }
            default: return fail(DX_ERR_CONFIG, "unknown operator kind");
        }
        *out = new dx_operator{std::move(m)};
        return DX_OK;
    });
}

int dx_operator_dim(const dx_operator* op) { return op ? static_cast<int>(op->m.rows()) : 0; }

dx_status dx_operator_entries(const dx_operator* op, dx_complex* buf, size_t n) {
    DX_REQUIRE(op);
    DX_REQUIRE(buf);
    const auto d = static_cast<size_t>(op->m.rows());
    if (n < d * d) return fail(DX_ERR_BUFFER, "buffer too small");
    for (size_t r = 0; r < d; ++r)
        for (size_t c = 0; c < d; ++c)
            buf[r * d + c] = to_c(op->m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
    return DX_OK;
}

dx_status dx_operator_spectrum(const dx_operator* op, double* buf, size_t n) {
    DX_REQUIRE(op);
    DX_REQUIRE(buf);
    return guarded([&] {
        const auto ev = hermitian_spectrum(op->m);
        if (n < ev.size()) return fail(DX_ERR_BUFFER, "buffer too small");
        std::memcpy(buf, ev.data(), ev.size() * sizeof(double));
        return DX_OK;
    });
}

void dx_operator_destroy(dx_operator* op) { delete op; }

dx_status dx_quantization_report_eval(const dx_cavity* c, int alpha, int dim, double z, double t,
                                      dx_quantization_report* out) {
    DX_REQUIRE(c);
    DX_REQUIRE(out);
    return guarded([&] {
        check_alpha(c, alpha);
        const ModeLadder l = make_ladder(dim);
        out->comm_safe_err =
            restricted_max_diff(commutator(l.a.m, l.adag.m), Mat::Identity(dim, dim), safe_indices(dim));
        const auto spec = hermitian_spectrum(time_local_hamiltonian(c->model, alpha, dim).m);
        const double w = c->model.omega(alpha);
        out->spectrum_err = 0.0;
        for (int n = 0; n + 1 < dim; ++n)
            out->spectrum_err =
                std::max(out->spectrum_err, std::abs(spec[static_cast<std::size_t>(n)] - c->model.k.hbar * w * (n + 0.5)));
        const SpacetimeReport r = spacetime_local_operators(c->model, alpha, dim, z, t);
        out->g_sym_err = r.g_sym_err;
        out->g_literal_sum = r.g_literal_sum;
        out->comm_dist_identity = r.comm_dist_identity;
        out->comm_dist_minus_i = r.comm_dist_minus_i;
        out->comm_via_g = to_c(r.comm_via_g);
        out->degenerate = r.degenerate;
        std::vector<double> times;
        for (int i = 1; i <= 7; ++i) times.push_back(c->model.period() * i / 20.0);
        const TrigAnsatzReport tr = trigonometric_ansatz_check(dim, w, times);
        out->trig_exp_residual = tr.exp_maxwell_residual;
        out->trig_trig_residual = tr.trig_maxwell_residual;
        out->trig_commutator_drift = tr.commutator_drift;
        out->trig_scalar_spread = tr.required_scalar_spread;
        out->trig_rejected = tr.rejected;
        return DX_OK;
    });
}

/* ---- resonance ---- */

static ResonanceParams resonance_of(const dx_resonance_params& p) {
    ResonanceParams r;
    r.gamma_e = p.gamma_e;
    r.S = p.S;
    r.tau = p.tau;
    r.E1 = p.E1;
    r.nu0 = p.nu0;
    r.A_param = p.A_param;
    return r;
}

dx_status dx_resonance_amplitude(const dx_resonance_params* p, int n, double omega, dx_complex* out) {
    DX_REQUIRE(p);
    DX_REQUIRE(out);
    return guarded([&] {
        *out = to_c(mode_amplitude(resonance_of(*p), n, omega));
        return DX_OK;
    });
}

dx_status dx_resonance_dispersion(const dx_resonance_params* p, int n, double* nu) {
    DX_REQUIRE(p);
    DX_REQUIRE(nu);
    return guarded([&] {
        *nu = dispersion(resonance_of(*p), n);
        return DX_OK;
    });
}

dx_status dx_resonance_fit(const double* n, const double* nu, size_t count, double* nu0, double* A,
                           double* max_residual) {
    DX_REQUIRE(n);
    DX_REQUIRE(nu);
    return guarded([&] {
        const DispersionFit f = fit_dispersion(std::vector<double>(n, n + count), std::vector<double>(nu, nu + count));
        if (nu0) *nu0 = f.nu0;
        if (A) *A = f.A_param;
        if (max_residual) *max_residual = f.max_abs_residual;
        return DX_OK;
    });
}

dx_status dx_splitting_parameter(double a_lattice, double S, double J_E, double L_chain, double hbar, double* A) {
    DX_REQUIRE(A);
    return guarded([&] {
        *A = splitting_parameter(a_lattice, S, J_E, L_chain, hbar);
        return DX_OK;
    });
}

/* ---- SSH ---- */

void dx_ssh_params_default(dx_ssh_params* p) {
    if (!p) return;
    const SshParams d;
    *p = {d.t0, d.alpha1, d.alpha2, d.u, d.K_spring, d.a, d.M_eff, d.N};
}

void dx_gap_options_default(dx_gap_options* o) {
    if (!o) return;
    const GapOptions d;
    *o = {DX_GAP_ELLIPTIC, DX_GAP_FULL, d.q_min, d.q_max, d.scan_points, d.tol, d.nk};
}

static GapMethod method_of(dx_gap_method m) {
    if (m == DX_GAP_ELLIPTIC) return GapMethod::elliptic;
    if (m == DX_GAP_QUADRATURE) return GapMethod::quadrature_root;
    throw DomainError("unknown gap method");
}

static GapForm form_of(dx_gap_form f) {
    if (f == DX_GAP_FULL) return GapForm::full;
    if (f == DX_GAP_ASYMPTOTIC) return GapForm::asymptotic;
    throw DomainError("unknown gap form");
}

dx_status dx_gap_solve(const dx_ssh_params* p, double n_c, double n_v, const dx_gap_options* o,
                       dx_gap_solution** out) {
    DX_REQUIRE(p);
    DX_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        GapOptions opt;
        if (o) {
            opt.method = method_of(o->method);
            opt.form = form_of(o->form);
            opt.q_min = o->q_min;
            opt.q_max = o->q_max;
            opt.scan_points = o->scan_points;
            opt.tol = o->tol;
            opt.nk = o->nk;
        }
        auto s = std::make_unique<dx_gap_solution>();
        s->sol = solve_gap(to_cpp(*p), occupation(n_c, n_v), opt);
        *out = s.release();
        return DX_OK;
    });
}

void dx_gap_solution_destroy(dx_gap_solution* s) { delete s; }

dx_status dx_gap_summary_get(const dx_gap_solution* s, dx_gap_summary* out) {
    DX_REQUIRE(s);
    DX_REQUIRE(out);
    const GapSolution& g = s->sol;
    out->found = g.found;
    out->Q = g.Q;
    out->kappa = g.kappa;
    out->residual = g.residual;
    out->n_roots = static_cast<int>(g.roots.size());
    out->multiple_roots = g.multiple_roots;
    out->ssh_like_branch = g.branch == Branch::ssh_like;
    out->regime = g.regime == "kappa<1" ? -1 : g.regime == "kappa=1" ? 0 : 1;
    return DX_OK;
}

dx_status dx_gap_roots(const dx_gap_solution* s, double* buf, size_t n, size_t* count) {
    DX_REQUIRE(s);
    const auto& r = s->sol.roots;
    if (const dx_status st = buffer_too_small(r.size(), buf ? n : 0, count); st != DX_OK) return st;
    if (!r.empty()) std::memcpy(buf, r.data(), r.size() * sizeof(double));
    return DX_OK;
}

dx_status dx_gap_rows(const dx_gap_solution* s, dx_gap_row* buf, size_t n, size_t* count) {
    DX_REQUIRE(s);
    const auto& rows = s->sol.rows;
    if (const dx_status st = buffer_too_small(rows.size(), buf ? n : 0, count); st != DX_OK) return st;
    for (size_t i = 0; i < rows.size(); ++i) {
        const GapRow& r = rows[i];
        buf[i] = {r.k,
                  r.coeffs.alpha,
                  r.coeffs.beta,
                  r.coeffs.product,
                  r.coeffs.degenerate,
                  r.ec_branch1,
                  r.ec_branch2,
                  {r.stab_branch1.cond1, r.stab_branch1.cond2, r.stab_branch1.cond3},
                  {r.stab_branch2.cond1, r.stab_branch2.cond2, r.stab_branch2.cond3}};
    }
    return DX_OK;
}

dx_status dx_gap_residual_curve(const dx_gap_solution* s, double* q, double* f, size_t n, size_t* count) {
    DX_REQUIRE(s);
    const auto& c = s->sol.residual_curve;
    if (const dx_status st = buffer_too_small(c.size(), (q && f) ? n : 0, count); st != DX_OK) return st;
    for (size_t i = 0; i < c.size(); ++i) {
        q[i] = c[i].first;
        f[i] = c[i].second;
    }
    return DX_OK;
}

dx_status dx_gap_residual(const dx_ssh_params* p, double n_c, double n_v, double Q, dx_gap_method m, dx_gap_form form,
                          double* out) {
    DX_REQUIRE(p);
    DX_REQUIRE(out);
    return guarded([&] {
        const SshParams sp = to_cpp(*p);
        sp.validate();
        *out = gap_residual(sp, occupation(n_c, n_v), Q, method_of(m), form_of(form));
        return DX_OK;
    });
}

dx_status dx_gap_discrete(const dx_ssh_params* p, double n_c, double n_v, int nk, dx_gap_form form, double q_lo,
                          double q_hi, double* Q) {
    DX_REQUIRE(p);
    DX_REQUIRE(Q);
    return guarded([&] {
        *Q = solve_gap_discrete(to_cpp(*p), occupation(n_c, n_v), nk, form_of(form), q_lo, q_hi);
        return DX_OK;
    });
}

dx_status dx_gap_approximations(const dx_ssh_params* p, dx_gap_approx* out) {
    DX_REQUIRE(p);
    DX_REQUIRE(out);
    return guarded([&] {
        const GapApproximations g = gap_approximations(to_cpp(*p));
        *out = {g.q_small,
                g.small_applicable,
                g.small_valid,
                {g.q_large[0], g.q_large[1]},
                g.large_applicable,
                {g.large_valid[0], g.large_valid[1]}};
        return DX_OK;
    });
}

dx_status dx_ground_energy(const dx_ssh_params* p, double Q, double u, double out[3]) {
    DX_REQUIRE(p);
    DX_REQUIRE(out);
    return guarded([&] {
        const SshParams sp = to_cpp(*p);
        sp.validate();
        out[0] = ground_energy_quadrature(sp, Q, u);
        out[1] = ground_energy_elliptic(sp, Q, u);
        out[2] = ground_energy_smallz(sp, Q, u);
        return DX_OK;
    });
}

dx_status dx_find_u0(const dx_ssh_params* p, double Q, double u_max, double* u0, int* flat, double* well_depth) {
    DX_REQUIRE(p);
    DX_REQUIRE(u0);
    return guarded([&] {
        const SshParams sp = to_cpp(*p);
        sp.validate();
        bool fl = false;
        *u0 = find_u0(sp, Q, u_max, fl);
        if (flat) *flat = fl;
        if (well_depth) *well_depth = ground_energy_elliptic(sp, Q, 0.0) - ground_energy_elliptic(sp, Q, *u0);
        return DX_OK;
    });
}

dx_status dx_elliptic_K(double k, double* out) {
    DX_REQUIRE(out);
    return guarded([&] {
        *out = elliptic_K(k);
        return DX_OK;
    });
}

dx_status dx_elliptic_E(double k, double* out) {
    DX_REQUIRE(out);
    return guarded([&] {
        *out = elliptic_E(k);
        return DX_OK;
    });
}

/* ---- invariant suite ---- */

dx_status dx_verify_all(uint64_t seed, dx_verify_callback cb, void* user, int* n_failed) {
    return guarded([&] {
        const auto rows = run_verify_suite(seed);
        int failed = 0;
        for (const VerifyRow& r : rows) {
            if (!r.pass && !r.expected_fail) ++failed;
            if (cb) {
                const dx_verify_row row{r.module.c_str(), r.name.c_str(), r.value, r.tol, r.pass, r.expected_fail};
                cb(&row, user);
            }
        }
        if (n_failed) *n_failed = failed;
        return DX_OK;
    });
}

}  // extern "C"
