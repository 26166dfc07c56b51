#include "duplexem/sshliquid.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>
#include <gsl/gsl_roots.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "duplexem/elliptic.hpp"
#include "quad.hpp"

namespace duplexem {

namespace {

bool finite_all(std::initializer_list<double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

double gsl_trampoline(double x, void* params) {
    return (*static_cast<const std::function<double(double)>*>(params))(x);
}

// Bisection on [lo, hi] with f(lo), f(hi) of opposite sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    gsl_set_error_handler_off();
    gsl_function F{&gsl_trampoline, const_cast<std::function<double(double)>*>(&f)};
    gsl_root_fsolver* s = gsl_root_fsolver_alloc(gsl_root_fsolver_bisection);
    if (gsl_root_fsolver_set(s, &F, lo, hi) != GSL_SUCCESS) {
        gsl_root_fsolver_free(s);
        throw NumericError("bisect: invalid bracket");
    }
    double root = 0.5 * (lo + hi);
    for (int it = 0; it < 400; ++it) {
        gsl_root_fsolver_iterate(s);
        root = gsl_root_fsolver_root(s);
        const double a = gsl_root_fsolver_x_lower(s);
        const double b = gsl_root_fsolver_x_upper(s);
        if (gsl_root_test_interval(a, b, 1e-300, tol) == GSL_SUCCESS) break;
    }
    gsl_root_fsolver_free(s);
    return root;
}

struct Bracket {
    double lo, hi;
};

std::vector<Bracket> scan_sign_changes(const std::function<double(double)>& f, double q0, double q1, int n,
                                       std::vector<std::pair<double, double>>* curve) {
    // midpoints of n cells, so Q = 0 is never sampled for a symmetric range with n even
    std::vector<Bracket> out;
    double prev_x = 0, prev_f = 0;
    bool have_prev = false;
    const double h = (q1 - q0) / n;
    for (int i = 0; i < n; ++i) {
        const double x = q0 + (i + 0.5) * h;
        const double fx = f(x);
        if (curve) curve->emplace_back(x, fx);
        if (!std::isfinite(fx)) {
            have_prev = false;
            continue;
        }
        if (fx == 0.0) {
            out.push_back({x, x});
        } else if (have_prev && prev_f != 0.0 && (prev_f < 0) != (fx < 0)) {
            out.push_back({prev_x, x});
        }
        prev_x = x;
        prev_f = fx;
        have_prev = true;
    }
    return out;
}

// sigma (alpha2 / 2 alpha1) (2 N a / pi) int_0^{pi/2a} Delta_k sin ka / R_k dk, i.e. sigma C' I(kappa)
double gap_term(const SshParams& p, const Occupation& occ, double Q, GapMethod method) {
    const double sigma = occ.sigma();
    if (sigma == 0.0 || p.alpha2 == 0.0 || p.u == 0.0) return 0.0;
    const double kap = std::abs(p.kappa(Q));
    if (method == GapMethod::elliptic) {
        const double cprime = 2.0 * p.N * p.a * p.u * p.alpha2 / (kPi * p.t0);
        return sigma * cprime * gap_integral_elliptic(kap, p.a);
    }
    const double pre = sigma * p.alpha2 / (2.0 * p.alpha1) * 2.0 * p.N * p.a / kPi;
    auto integrand = [&](double k) {
        const double eps = p.eps(k), del = p.delta(k);
        const double r = std::sqrt(eps * eps + Q * Q * del * del);
        return r > 0 ? del * std::sin(k * p.a) / r : 0.0;
    };
    return pre * detail::adaptive_integrate(integrand, 0.0, kPi / (2.0 * p.a));
}

double form_residual(double Q, double term, GapForm form) {
    return form == GapForm::full ? 1.0 + Q * term - Q : term - 1.0;
}

std::string regime_of(double kap) {
    if (std::abs(kap - 1.0) <= 1e-12) return "kappa=1";
    return kap < 1.0 ? "kappa<1" : "kappa>1";
}

}  // namespace

void SshParams::validate() const {
    if (!finite_all({t0, alpha1, alpha2, u, K_spring, a, M_eff})) throw DomainError("SshParams: non-finite value");
    if (!(t0 > 0)) throw DomainError("SshParams: t0 must be > 0");
    if (!(a > 0)) throw DomainError("SshParams: a must be > 0");
    if (alpha1 == 0.0) throw DomainError("SshParams: alpha1 must be nonzero");
    if (N <= 0 || N % 2 != 0) throw DomainError("SshParams: N must be positive and even");
}

double SshParams::eps(double k) const { return 2.0 * t0 * std::cos(k * a); }
double SshParams::delta(double k) const { return 4.0 * alpha1 * u * std::sin(k * a); }
double SshParams::kappa(double Q) const { return 2.0 * alpha1 * u * Q / t0; }

BogoliubovCoeffs bogoliubov_coeffs(const SshParams& p, double Q, double k, int sign_branch) {
    if (sign_branch != 1 && sign_branch != -1) throw DomainError("bogoliubov_coeffs: sign_branch must be +-1");
    const double eps = p.eps(k);
    const double qd = Q * p.delta(k);
    const double r = std::hypot(eps, qd);
    BogoliubovCoeffs c;
    if (r == 0.0) {
        c.degenerate = true;
        return c;
    }
    const double x = eps / r;
    const double b2 = 0.5 * (1.0 + sign_branch * x);
    const double a2 = 0.5 * (1.0 - sign_branch * x);
    c.product = 0.5 * qd / r;
    c.alpha = std::sqrt(a2);
    c.beta = std::copysign(std::sqrt(b2), c.product);
    return c;
}

double gap_integral_elliptic(double kappa, double a) {
    if (!(a > 0)) throw DomainError("gap_integral: a must be > 0");
    const double kap = std::abs(kappa);
    if (kap == 0.0) return std::numeric_limits<double>::infinity();
    if (kap == 1.0) return kPi / (4.0 * a);
    if (kap < 1.0) return elliptic_KmE_over_m(std::sqrt(1.0 - kap * kap)) / a;
    const double kp = std::sqrt(1.0 - 1.0 / (kap * kap));
    return (elliptic_K(kp) - elliptic_KmE_over_m(kp)) / (a * kap);
}

double gap_integral_quadrature(double kappa, double a) {
    if (!(a > 0)) throw DomainError("gap_integral: a must be > 0");
    const double k2 = kappa * kappa;
    if (k2 == 0.0) return std::numeric_limits<double>::infinity();
    auto f = [&](double k) {
        const double s = std::sin(k * a), c = std::cos(k * a);
        return s * s / std::sqrt(c * c + k2 * s * s);
    };
    return detail::adaptive_integrate(f, 0.0, kPi / (2.0 * a));
}

double gap_residual(const SshParams& p, const Occupation& occ, double Q, GapMethod method, GapForm form) {
    return form_residual(Q, gap_term(p, occ, Q, method), form);
}

double gap_rhs(const SshParams& p, const Occupation& occ, double Q) {
    return 1.0 + Q * gap_term(p, occ, Q, GapMethod::elliptic);
}

BandEnergies band_energies(const SshParams& p, double Q, double k) {
    const double eps = p.eps(k);
    const double qd = Q * p.delta(k);
    const double r = std::hypot(eps, qd);
    BandEnergies b;
    if (r == 0.0) return b;
    b.ec_branch1 = (qd * qd - eps * eps) / r;
    b.ev_branch1 = -b.ec_branch1;
    b.ec_branch2 = r;
    b.ev_branch2 = -r;
    return b;
}

StabilityFlags stability_classify(const SshParams& p, double Q, double k, const Occupation& occ, Branch branch) {
    const double eps = p.eps(k);
    const double qd = Q * p.delta(k);
    const double r = std::hypot(eps, qd);
    StabilityFlags f;
    const double sigma = occ.sigma();
    if (r == 0.0) return f;
    const double qd2r = qd * qd / r;
    const double e2r = eps * eps / r;
    const double s = branch == Branch::ssh_like ? -1.0 : 1.0;
    const double lhs1 = eps * (1.0 + s * eps / r);
    if (sigma < 0) f.cond1 = lhs1 < qd2r;
    else if (sigma > 0) f.cond1 = lhs1 > qd2r;
    const double t = e2r - 2.0 * qd2r;
    f.cond2 = t * t - eps * eps + 0.25 * qd * qd > 0.0;
    f.cond3 = (3.0 * qd2r - s * 4.0 * e2r) * sigma > 0.0;
    return f;
}

GapSolution solve_gap(const SshParams& p, const Occupation& occ, const GapOptions& opt) {
    p.validate();
    if (opt.scan_points < 2) throw DomainError("solve_gap: scan_points must be >= 2");
    double q0 = opt.q_min, q1 = opt.q_max;
    if (q0 == 0.0 && q1 == 0.0) {
        const double span = std::max(10.0 * std::abs(p.alpha2) * p.N / std::abs(p.alpha1), 10.0);
        q0 = -span;
        q1 = span;
    }
    if (!(q1 > q0)) throw DomainError("solve_gap: empty Q bracket");

    auto f = [&](double Q) { return gap_residual(p, occ, Q, opt.method, opt.form); };
    GapSolution sol;
    std::vector<std::pair<double, double>> curve;
    const int n = opt.scan_points + (opt.scan_points % 2);
    for (const Bracket& b : scan_sign_changes(f, q0, q1, n, &curve)) {
        sol.roots.push_back(b.lo == b.hi ? b.lo : bisect(f, b.lo, b.hi, opt.tol));
    }
    if (sol.roots.empty()) {
        sol.residual_curve = std::move(curve);
        return sol;
    }
    sol.found = true;
    sol.multiple_roots = sol.roots.size() > 1;
    // primary root: the one continuously connected to the SSH value Q = 1
    sol.Q = *std::min_element(sol.roots.begin(), sol.roots.end(),
                              [](double x, double y) { return std::abs(x - 1.0) < std::abs(y - 1.0); });
    sol.residual = std::abs(f(sol.Q));
    sol.kappa = p.kappa(sol.Q);
    sol.z_sq = sol.kappa;
    sol.regime = regime_of(std::abs(sol.kappa));
    sol.branch = occ.sigma() > 0 ? Branch::ssh_like : Branch::near_equilibrium;
    const int sign = sol.branch == Branch::near_equilibrium ? 1 : -1;
    const int nk = std::max(opt.nk, 2);
    for (int i = 0; i < nk; ++i) {
        GapRow row;
        row.k = (kPi / (2.0 * p.a)) * i / (nk - 1);
        row.coeffs = bogoliubov_coeffs(p, sol.Q, row.k, sign);
        const BandEnergies be = band_energies(p, sol.Q, row.k);
        row.ec_branch1 = be.ec_branch1;
        row.ec_branch2 = be.ec_branch2;
        row.stab_branch1 = stability_classify(p, sol.Q, row.k, occ, Branch::near_equilibrium);
        row.stab_branch2 = stability_classify(p, sol.Q, row.k, occ, Branch::ssh_like);
        sol.rows.push_back(row);
    }
    return sol;
}

double solve_gap_discrete(const SshParams& p, const Occupation& occ, int nk, GapForm form, double q_lo, double q_hi) {
    p.validate();
    if (nk < 2) throw DomainError("solve_gap_discrete: nk must be >= 2");
    const double kmax = kPi / (2.0 * p.a);
    const double h = kmax / (nk - 1);
    const double pre = occ.sigma() * p.alpha2 / (2.0 * p.alpha1) * 2.0 * p.N * p.a / kPi * h;
    auto term = [&](double Q) {
        double s = 0.0;
        for (int i = 0; i < nk; ++i) {
            const double k = i * h;
            const double eps = p.eps(k), del = p.delta(k);
            const double r = std::sqrt(eps * eps + Q * Q * del * del);
            const double w = (i == 0 || i == nk - 1) ? 0.5 : 1.0;
            if (r > 0) s += w * del * std::sin(k * p.a) / r;
        }
        return pre * s;
    };
    auto f = [&](double Q) { return form_residual(Q, term(Q), form); };
    const auto br = scan_sign_changes(f, q_lo, q_hi, 400, nullptr);
    if (br.empty()) throw NumericError("solve_gap_discrete: no root in bracket");
    const Bracket& b = br.front();
    return b.lo == b.hi ? b.lo : bisect(f, b.lo, b.hi, 1e-15);
}

GapApproximations gap_approximations(const SshParams& p) {
    GapApproximations g;
    if (p.u == 0.0 || p.alpha2 == 0.0) return g;
    const double rad_s = 25.0 - 32.0 * p.t0 * p.alpha1 / (p.N * p.u * p.alpha2);
    if (rad_s >= 0.0) {
        g.small_applicable = true;
        g.q_small = p.t0 / (6.0 * p.u) * std::sqrt(rad_s);
        g.small_valid = std::sqrt(rad_s) / 3.0 < 1.0;
    }
    const double rad_l = 1.0 + 80.0 * p.alpha1 * p.t0 / (9.0 * p.N * p.u * p.alpha2);
    if (rad_l >= 0.0) {
        g.large_applicable = true;
        const double pre = -3.0 * p.alpha2 * p.N / 16.0;
        const double s = std::sqrt(rad_l);
        g.q_large[0] = pre * (1.0 + s);
        g.q_large[1] = pre * (1.0 - s);
        for (int i = 0; i < 2; ++i) g.large_valid[i] = std::abs(p.kappa(g.q_large[i])) > 1.0;
    }
    return g;
}

double ground_energy_quadrature(const SshParams& p, double Q, double u) {
    SshParams q = p;
    q.u = u;
    auto integrand = [&](double k) {
        const double eps = q.eps(k);
        const double qd = Q * q.delta(k);
        const double r = std::hypot(eps, qd);
        return r > 0 ? (qd * qd - eps * eps) / r : 0.0;
    };
    const double integral = detail::adaptive_integrate(integrand, 0.0, kPi / (2.0 * p.a));
    return -2.0 * p.N * p.a / kPi * integral + 2.0 * p.N * p.K_spring * u * u;
}

double ground_energy_elliptic(const SshParams& p, double Q, double u) {
    const double kap = std::abs(2.0 * p.alpha1 * u * Q / p.t0);
    const double k2 = kap * kap;
    double J;
    if (kap == 0.0) {
        J = 1.0;
    } else if (kap == 1.0) {
        J = 0.0;
    } else if (kap < 1.0) {
        const double k = std::sqrt(1.0 - k2);
        J = elliptic_K(k) - (1.0 + k2) * elliptic_KmE_over_m(k);
    } else {
        const double kp = std::sqrt(1.0 - 1.0 / k2);
        J = ((1.0 + k2) * elliptic_KmE_over_m(kp) - k2 * elliptic_K(kp)) / kap;
    }
    return 4.0 * p.N * p.t0 / kPi * J + 2.0 * p.N * p.K_spring * u * u;
}

double ground_energy_smallz(const SshParams& p, double Q, double u) {
    const double kap = std::abs(2.0 * p.alpha1 * u * Q / p.t0);
    double bracket = 4.0 * p.t0 / kPi;
    if (kap > 0.0) {
        const double k2 = kap * kap;
        bracket += -6.0 / kPi * p.t0 * k2 * std::log(4.0 / kap) + 7.0 * p.t0 * k2 / kPi;
    }
    return p.N * bracket + 2.0 * p.N * p.K_spring * u * u;
}

double find_u0(const SshParams& p, double Q, double u_max, bool& flat) {
    if (!(u_max > 0)) throw DomainError("find_u0: u_max must be > 0");
    constexpr int n = 400;
    auto e = [&](double u) { return ground_energy_elliptic(p, Q, u); };
    int best = 0;
    double best_e = e(0.0);
    for (int i = 1; i <= n; ++i) {
        const double v = e(u_max * i / n);
        if (v < best_e) {
            best_e = v;
            best = i;
        }
    }
    flat = best == 0;
    if (flat) return 0.0;
    const double h = u_max / n;
    double lo = (best - 1) * h;
    double hi = std::min(best + 1, n) * h;
    double x = best * h;
    if (best == n) return x;  // minimum at the scan edge; no interior bracket
    std::function<double(double)> fn = e;
    gsl_set_error_handler_off();
    gsl_function F{&gsl_trampoline, &fn};
    gsl_min_fminimizer* s = gsl_min_fminimizer_alloc(gsl_min_fminimizer_goldensection);
    if (gsl_min_fminimizer_set(s, &F, x, lo, hi) == GSL_SUCCESS) {
        for (int it = 0; it < 200; ++it) {
            gsl_min_fminimizer_iterate(s);
            x = gsl_min_fminimizer_x_minimum(s);
            lo = gsl_min_fminimizer_x_lower(s);
            hi = gsl_min_fminimizer_x_upper(s);
            if (gsl_min_test_interval(lo, hi, 1e-14, 1e-12) == GSL_SUCCESS) break;
        }
    }
    gsl_min_fminimizer_free(s);
    return x;
}

GroundStateCurve ground_state_energy(const SshParams& p, double Q, const std::vector<double>& u_grid) {
    p.validate();
    if (u_grid.empty()) throw DomainError("ground_state_energy: empty u grid");
    GroundStateCurve c;
    double u_max = 0.0;
    for (double u : u_grid) {
        c.u.push_back(u);
        c.e0_quadrature.push_back(ground_energy_quadrature(p, Q, u));
        c.e0_elliptic.push_back(ground_energy_elliptic(p, Q, u));
        c.e0_smallz.push_back(ground_energy_smallz(p, Q, u));
        u_max = std::max(u_max, std::abs(u));
    }
    if (u_max > 0) {
        c.u0 = find_u0(p, Q, u_max, c.flat);
        c.well_depth = ground_energy_elliptic(p, Q, 0.0) - ground_energy_elliptic(p, Q, c.u0);
    } else {
        c.flat = true;
    }
    return c;
}

}  // namespace duplexem
