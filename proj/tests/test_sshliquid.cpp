#include <gsl/gsl_sf_ellint.h>

#include <random>

#include "doctest.h"
#include "duplexem/sshliquid.hpp"

using namespace duplexem;

namespace {

// Composite Simpson on (1/a) int_0^{pi/2} sin^2 th / sqrt(1 - (1 - kappa^2) sin^2 th) dth.
double integral_oracle(double kappa, double a) {
    const int n = 20000;
    const double h = (kPi / 2) / n, m = 1 - kappa * kappa;
    auto f = [&](double th) {
        const double s = std::sin(th);
        return s * s / std::sqrt(1 - m * s * s);
    };
    double sum = f(0) + f(kPi / 2);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4 : 2) * f(i * h);
    return sum * h / 3 / a;
}

// Plain bisection on Q - 1 - sigma C' Q I(kappa) with the oracle integral.
double q_oracle(const SshParams& p, double sigma, double lo, double hi) {
    auto g = [&](double q) {
        const double cp = 2 * p.N * p.a * p.u * p.alpha2 / (kPi * p.t0);
        return q - 1 - sigma * cp * q * integral_oracle(2 * p.alpha1 * p.u * q / p.t0, p.a);
    };
    double glo = g(lo);
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi), gm = g(mid);
        if ((gm < 0) == (glo < 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

SshParams base() {
    SshParams p;
    p.alpha2 = 0.02;
    p.u = 0.3;
    return p;
}

}  // namespace

TEST_SUITE("sshliquid") {

TEST_CASE("gap integral against Simpson and GSL elliptic oracles") {
    for (double kappa : {0.05, 0.3, 0.7, 0.999, 1.0, 1.5, 4.0}) {
        const double want = integral_oracle(kappa, 1.3);
        CHECK(gap_integral_elliptic(kappa, 1.3) == doctest::Approx(want).epsilon(1e-10));
        CHECK(gap_integral_quadrature(kappa, 1.3) == doctest::Approx(want).epsilon(1e-9));
        if (kappa < 1) {
            const double k = std::sqrt(1 - kappa * kappa);
            const double g = (gsl_sf_ellint_Kcomp(k, GSL_PREC_DOUBLE) - gsl_sf_ellint_Ecomp(k, GSL_PREC_DOUBLE)) /
                             (k * k) / 1.3;
            CHECK(gap_integral_elliptic(kappa, 1.3) == doctest::Approx(g).epsilon(1e-12));
        }
    }
    CHECK(gap_integral_elliptic(1.0, 2.0) == doctest::Approx(kPi / 8).epsilon(1e-15));
    CHECK(std::isinf(gap_integral_elliptic(0.0, 1.0)));
    CHECK(gap_integral_elliptic(-0.4, 1.0) == gap_integral_elliptic(0.4, 1.0));
}

TEST_CASE("alpha2 = 0 gives Q = 1") {
    SshParams p;
    p.u = 0.25;
    for (GapMethod m : {GapMethod::elliptic, GapMethod::quadrature_root}) {
        GapOptions o;
        o.method = m;
        const GapSolution s = solve_gap(p, Occupation::ground(), o);
        REQUIRE(s.found);
        CHECK(std::abs(s.Q - 1.0) <= 1e-10);
    }
}

TEST_CASE("solved Q matches the independent oracle and the frozen value") {
    const SshParams p = base();
    const double oracle = q_oracle(p, -1.0, 0.1, 1.0);
    const double frozen = 0.640019067001704;  // oracle value, t0 = alpha1 = a = 1, N = 100, alpha2 = 0.02, u = 0.3
    CHECK(std::abs(oracle - frozen) <= 1e-9);
    for (GapMethod m : {GapMethod::elliptic, GapMethod::quadrature_root}) {
        GapOptions o;
        o.method = m;
        const GapSolution s = solve_gap(p, Occupation::ground(), o);
        REQUIRE(s.found);
        CHECK(std::abs(s.Q - frozen) <= 1e-12);
        CHECK(s.branch == Branch::near_equilibrium);
        CHECK(s.regime == "kappa<1");
        CHECK(std::abs(s.residual) <= 1e-10);
    }
}

TEST_CASE("methods agree on random parameter sets") {
    std::mt19937_64 rng(20);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 20; ++i) {
        SshParams p;
        p.t0 = 0.5 + 1.5 * u(rng);
        p.alpha1 = 0.5 + 1.5 * u(rng);
        p.alpha2 = 0.05 * u(rng);
        p.u = 0.05 + 0.45 * u(rng);
        GapOptions o;
        const GapSolution a = solve_gap(p, Occupation::ground(), o);
        o.method = GapMethod::quadrature_root;
        const GapSolution b = solve_gap(p, Occupation::ground(), o);
        REQUIRE(a.found);
        REQUIRE(b.found);
        CHECK(std::abs(a.Q - b.Q) <= 1e-8);
        CHECK(std::abs(gap_rhs(p, Occupation::ground(), a.Q) - a.Q) <= 1e-10);
    }
}

TEST_CASE("discrete Brillouin-zone sum converges to the continuum root") {
    const SshParams p = base();
    const double q = solve_gap(p, Occupation::ground()).Q;
    const double e1 = std::abs(solve_gap_discrete(p, Occupation::ground(), 65, GapForm::full, 0.1, 1.0) - q);
    const double e2 = std::abs(solve_gap_discrete(p, Occupation::ground(), 1025, GapForm::full, 0.1, 1.0) - q);
    // the integrand is smooth and periodic in k, so the trapezoid sum converges spectrally
    CHECK(e1 <= 1e-10);
    CHECK(e2 <= 1e-10);
    const double coarse = std::abs(solve_gap_discrete(p, Occupation::ground(), 5, GapForm::full, 0.1, 1.0) - q);
    CHECK(coarse > e2);
}

TEST_CASE("exact case of the asymptotic form") {
    SshParams p;
    p.alpha2 = 1.0;
    p.alpha1 = 1.5;
    p.u = -2 * p.t0 / (p.alpha2 * p.N);
    GapOptions o;
    o.form = GapForm::asymptotic;
    const GapSolution s = solve_gap(p, Occupation::ground(), o);
    REQUIRE(s.found);
    double best = INFINITY;
    for (double r : s.roots) best = std::min(best, std::abs(std::abs(r) - p.alpha2 * p.N / (4 * p.alpha1)));
    CHECK(best <= 1e-10);
}

TEST_CASE("no root: residual curve is reported") {
    SshParams p;
    p.alpha2 = 0.0;
    p.u = 0.2;
    GapOptions o;
    o.form = GapForm::asymptotic;
    const GapSolution s = solve_gap(p, Occupation::ground(), o);
    CHECK_FALSE(s.found);
    CHECK_FALSE(s.residual_curve.empty());
}

TEST_CASE("Bogoliubov coefficients") {
    const SshParams p = base();
    for (int b : {1, -1})
        for (double k = 0.05; k < kPi / 2; k += 0.2) {
            const BogoliubovCoeffs c = bogoliubov_coeffs(p, 0.8, k, b);
            CHECK(c.alpha * c.alpha + c.beta * c.beta == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(c.alpha * c.beta == doctest::Approx(c.product).epsilon(1e-13));
            const double r = std::hypot(p.eps(k), 0.8 * p.delta(k));
            CHECK(2 * std::abs(c.product) == doctest::Approx(0.8 * std::abs(p.delta(k)) / r).epsilon(1e-13));
        }
    SshParams z = p;
    z.u = 0.0;
    const BogoliubovCoeffs free = bogoliubov_coeffs(z, 1.0, 0.3, 1);
    CHECK(free.product == 0.0);
    CHECK(std::abs(free.beta) == doctest::Approx(1.0));
    CHECK_THROWS_AS(bogoliubov_coeffs(p, 1.0, 0.1, 0), DomainError);
}

TEST_CASE("band energies: particle-hole symmetry and branch sum") {
    const SshParams p = base();
    for (double k = 0.0; k <= kPi / 2; k += 0.1) {
        const BandEnergies b = band_energies(p, 1.2, k);
        CHECK(b.ev_branch1 == -b.ec_branch1);
        CHECK(b.ev_branch2 == -b.ec_branch2);
        const double e = p.eps(k), qd = 1.2 * p.delta(k), r = std::hypot(e, qd);
        CHECK(b.ec_branch2 == doctest::Approx(r).epsilon(1e-14));
        CHECK(b.ec_branch1 == doctest::Approx((qd * qd - e * e) / r).epsilon(1e-13));
    }
}

TEST_CASE("gap approximation formulas") {
    SshParams p;
    p.alpha2 = 1.0;
    p.u = 1.6 / p.N;  // x = 1.6
    const GapApproximations g = gap_approximations(p);
    CHECK(g.small_applicable);
    CHECK(g.q_small == doctest::Approx(p.t0 / (6 * p.u) * std::sqrt(25 - 32 / 1.6)).epsilon(1e-14));
    CHECK(g.large_applicable);
    const double s = std::sqrt(1 + 80.0 / (9 * 1.6));
    CHECK(g.q_large[1] == doctest::Approx(-3.0 * p.N / 16 * (1 - s)).epsilon(1e-14));
}

TEST_CASE("ground-state energy forms") {
    SshParams p;
    p.K_spring = 4.0;
    for (double u = 0.01; u < 0.5; u += 0.03) {
        const double q = ground_energy_quadrature(p, 1.0, u), e = ground_energy_elliptic(p, 1.0, u);
        CHECK(e == doctest::Approx(q).epsilon(1e-8));
        CHECK(ground_energy_elliptic(p, 1.0, -u) == e);
    }
    // u = 0: E0 = 4 N t0 / pi
    CHECK(ground_energy_elliptic(p, 1.0, 0.0) == doctest::Approx(4 * p.N / kPi).epsilon(1e-14));
    // kappa = 1 and kappa > 1 regimes stay continuous
    const double at1 = ground_energy_elliptic(p, 1.0, 0.5);
    CHECK(ground_energy_elliptic(p, 1.0, 0.5 - 1e-9) == doctest::Approx(at1).epsilon(1e-7));
    CHECK(ground_energy_elliptic(p, 1.0, 0.5 + 1e-9) == doctest::Approx(at1).epsilon(1e-7));
    CHECK(ground_energy_elliptic(p, 1.0, 0.8) == doctest::Approx(ground_energy_quadrature(p, 1.0, 0.8)).epsilon(1e-8));
    const double u01 = 0.05;
    CHECK(std::abs(ground_energy_smallz(p, 1.0, u01) - ground_energy_quadrature(p, 1.0, u01)) /
              ground_energy_quadrature(p, 1.0, u01) <=
          0.01);
}

TEST_CASE("double-well detection") {
    SshParams p;
    p.K_spring = 4.0;
    bool flat = true;
    const double u0 = find_u0(p, 1.0, 0.5, flat);
    CHECK_FALSE(flat);
    CHECK(u0 > 1e-3);
    CHECK(ground_energy_elliptic(p, 1.0, u0) < ground_energy_elliptic(p, 1.0, 0.0));
    CHECK(ground_energy_elliptic(p, 1.0, u0) <= ground_energy_elliptic(p, 1.0, u0 * 1.01));
    CHECK(ground_energy_elliptic(p, 1.0, u0) <= ground_energy_elliptic(p, 1.0, u0 * 0.99));
    SshParams stiff = p;
    stiff.K_spring = 1e6;
    find_u0(stiff, 1.0, 0.5, flat);
    CHECK(flat);
}

TEST_CASE("parameter validation") {
    SshParams p;
    p.N = 7;
    CHECK_THROWS_AS(solve_gap(p, Occupation::ground()), DomainError);
    SshParams q;
    q.t0 = 0;
    CHECK_THROWS_AS(q.validate(), DomainError);
}

TEST_CASE("inverted occupation selects the SSH-like branch") {
    SshParams p = base();
    const GapSolution s = solve_gap(p, Occupation::inverted());
    if (s.found) CHECK(s.branch == Branch::ssh_like);
    CHECK(Occupation::inverted().sigma() == 1.0);
}

}  // TEST_SUITE
