#include "doctest.h"
#include "duplexem/fockquant.hpp"

using namespace duplexem;

TEST_SUITE("fockquant") {

TEST_CASE("ladder matrix elements") {
    const ModeLadder l = make_ladder(6);
    for (int n = 1; n < 6; ++n) {
        CHECK(std::abs(l.a.m(n - 1, n) - std::sqrt(double(n))) <= 1e-15);
        CHECK(std::abs(l.adag.m(n, n - 1) - std::sqrt(double(n))) <= 1e-15);
    }
    CHECK((l.adag.m - l.a.m.adjoint()).norm() == 0.0);
    CHECK_THROWS_AS(make_ladder(1), DomainError);
}

TEST_CASE("canonical commutator holds on the safe block only") {
    for (int d : {2, 3, 8, 16}) {
        const ModeLadder l = make_ladder(d);
        const Mat c = commutator(l.a.m, l.adag.m);
        CHECK(restricted_max_diff(c, Mat::Identity(d, d), safe_indices(d)) <= 1e-14);
        CHECK(std::abs(c(d - 1, d - 1) - cplx(1.0 - d)) <= 1e-13);  // truncation artifact at the top state
    }
}

TEST_CASE("time-local spectrum is hbar w (n + 1/2)") {
    CavityModel m;
    m.n_modes = 3;
    m.k.hbar = 0.7;
    for (int a = 1; a <= 3; ++a) {
        const auto s = hermitian_spectrum(time_local_hamiltonian(m, a, 8).m);
        for (int n = 0; n <= 6; ++n)
            CHECK(s[static_cast<std::size_t>(n)] == doctest::Approx(m.k.hbar * m.omega(a) * (n + 0.5)).epsilon(1e-13));
    }
}

TEST_CASE("space-local spectrum uses lambda0") {
    CavityModel m;
    m.k.lambda0 = 2.5;
    const auto s = hermitian_spectrum(space_local_hamiltonian(m, 1, 6).m);
    for (int n = 0; n <= 4; ++n)
        CHECK(s[static_cast<std::size_t>(n)] == doctest::Approx(m.k.lambda0 * m.omega(1) * (n + 0.5)).epsilon(1e-13));
}

TEST_CASE("Heisenberg equation for the time-local ladder") {
    CavityModel m;
    m.n_modes = 2;
    CHECK(heisenberg_residual(m, 2, 8, 0.37) <= 1e-6);
}

TEST_CASE("symmetrized g on the safe block") {
    CavityModel m;
    m.k.hbar = 1.3;
    m.k.lambda0 = 0.4;
    const SpacetimeReport r = spacetime_local_operators(m, 1, 6, 0.2, 0.7);
    CHECK(r.g_sym_err <= 1e-12);
    CHECK(r.g_literal_sum <= 1e-12);  // as-written variants cancel pairwise
    CHECK(std::abs(r.comm_via_g - cplx(1.0)) <= 1e-12);
    CHECK(r.comm_dist_minus_i > 0.1);
    CHECK_FALSE(r.degenerate);
    CHECK(spacetime_local_operators(m, 1, 2, 0.2, 0.7).degenerate);
}

TEST_CASE("trigonometric ansatz is rejected, exponential accepted") {
    std::vector<double> times;
    for (int i = 1; i <= 7; ++i) times.push_back(0.05 * i);
    const TrigAnsatzReport r = trigonometric_ansatz_check(8, kPi, times);
    CHECK(r.rejected);
    CHECK(r.exp_maxwell_residual <= 1e-10);
    CHECK(r.trig_maxwell_residual > 1e-3);
    CHECK(r.required_scalar_spread > 0.0);
}

TEST_CASE("field operators are Hermitian with zero vacuum mean") {
    CavityModel m;
    m.n_modes = 3;
    for (Scheme s : {Scheme::time_local, Scheme::space_local}) {
        const OperatorField f = assemble_field_operators(m, s, 6, 0.3, 0.2);
        REQUIRE(f.e.size() == 3);
        for (const auto& op : f.e) {
            CHECK((op.m - op.m.adjoint()).norm() <= 1e-13);
            CHECK(std::abs(vacuum_expectation(op.m)) <= 1e-14);
        }
        CHECK(vacuum_variance(f.e) > 0.0);
    }
}

TEST_CASE("vacuum variance of E_x matches the mode sum") {
    CavityModel m;
    m.n_modes = 2;
    const double z = 0.3;
    const OperatorField f = assemble_field_operators(m, Scheme::time_local, 6, z, 0.0);
    double want = 0.0;
    for (int a = 1; a <= 2; ++a) {
        const double s = std::sin(m.wavenum(a) * z);
        want += m.k.hbar * m.omega(a) / (m.volume * m.k.eps0) * s * s;
    }
    CHECK(vacuum_variance(f.e) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("kron dimensions and mixed product") {
    const ModeLadder l = make_ladder(3);
    const Mat k = kron(l.a.m, l.adag.m);
    CHECK(k.rows() == 9);
    const Mat lhs = kron(l.a.m, l.a.m) * kron(l.adag.m, l.adag.m);
    const Mat rhs = kron(l.a.m * l.adag.m, l.a.m * l.adag.m);
    CHECK((lhs - rhs).norm() <= 1e-13);
}

}  // TEST_SUITE
