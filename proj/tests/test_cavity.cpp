#include <algorithm>

#include "doctest.h"
#include "duplexem/cavity.hpp"

using namespace duplexem;

namespace {

double worst(const std::array<double, 4>& r) { return *std::max_element(r.begin(), r.end()); }

// Faraday and Ampere laws for (E_x, H_y) checked by central differences of the field values only.
double fd_maxwell(const CavityModel& m, const ModeState& st, bool second, double z, double t) {
    const double h = 1e-6 * m.length, ht = 1e-6 * m.period();
    auto f = [&](double zz, double tt) {
        return second ? field_second_solution(m, st, zz, tt) : field_first_solution(m, st, zz, tt);
    };
    const FieldPair zp = f(z + h, t), zm = f(z - h, t), tp = f(z, t + ht), tm = f(z, t - ht);
    const cplx dz_e = (zp.e[0] - zm.e[0]) / (2 * h), dz_h = (zp.h[1] - zm.h[1]) / (2 * h);
    const cplx dt_e = (tp.e[0] - tm.e[0]) / (2 * ht), dt_h = (tp.h[1] - tm.h[1]) / (2 * ht);
    const double scale = std::max({std::abs(dz_e), std::abs(dt_h) * m.k.mu0, 1.0});
    return std::max(std::abs(dz_e + m.k.mu0 * dt_h), std::abs(-dz_h - m.k.eps0 * dt_e)) / scale;
}

}  // namespace

TEST_SUITE("cavity") {

TEST_CASE("mode frequencies and amplitudes") {
    CavityModel m;
    m.length = 2.0;
    m.n_modes = 3;
    CHECK(m.omega(2) == doctest::Approx(kPi));
    CHECK(m.wavenum(3) == doctest::Approx(1.5 * kPi));
    CHECK(m.amp_e(1) == doctest::Approx(std::sqrt(2 * m.omega(1) * m.omega(1))));
}

TEST_CASE("analytic derivatives agree with finite differences") {
    for (bool si : {false, true}) {
        CavityModel m;
        m.n_modes = 3;
        if (si) {
            m.k = PhysicalConstants::si();
            m.length = 0.01;
            m.volume = 1e-6;
        }
        const ModeState st = ModeState::random(3, 99);
        for (double z : {0.13, 0.5, 0.77})
            for (double t : {0.1, 0.35}) {
                CHECK(fd_maxwell(m, st, false, z * m.length, t * m.period()) <= 1e-6);
                CHECK(fd_maxwell(m, st, true, z * m.length, t * m.period()) <= 1e-6);
            }
    }
}

TEST_CASE("generalized residuals vanish for random states") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        CavityModel m;
        m.n_modes = 8;
        const ModeState st = ModeState::random(8, seed);
        const SampleGrid g = SampleGrid::cavity(m, 64, 64);
        CHECK(worst(maxwell_residual(m, first_solution_source(m, st), g)) <= 1e-10);
        CHECK(worst(maxwell_residual(m, second_solution_source(m, st), g)) <= 1e-10);
        for (double th : {0.3, 1.9, 4.4})
            CHECK(worst(maxwell_residual(m, dual_rotated_source(second_solution_source(m, st), th), g)) <= 1e-10);
    }
}

TEST_CASE("secular-free second solution is minus the first") {
    CavityModel m;
    m.n_modes = 4;
    const ModeState st = ModeState::random(4, 5);
    const FieldPair a = field_first_solution(m, st, 0.31, 0.42), b = field_second_solution(m, st, 0.31, 0.42);
    CHECK(std::abs(a.e[0] + b.e[0]) <= 1e-12);
    CHECK(std::abs(a.h[1] + b.h[1]) <= 1e-12);
}

TEST_CASE("definite convention has a secular term and breaks Maxwell") {
    CavityModel m;
    m.n_modes = 2;
    m.convention = Convention::definite;
    const ModeState st = ModeState::random(2, 8);
    CHECK(has_secular_term(m, st.modes[0]));
    const SampleGrid g = SampleGrid::cavity(m, 32, 32);
    CHECK(worst(maxwell_residual(m, second_solution_source(m, st), g)) > 1e-3);
    ModeState zero = st;
    zero.modes[0] = {0.0, 0.0};
    CHECK_FALSE(has_secular_term(m, zero.modes[0]));
}

TEST_CASE("tangential E vanishes at the walls") {
    CavityModel m;
    m.n_modes = 5;
    const ModeState st = ModeState::random(5, 4);
    for (double t : {0.0, 0.3, 0.8}) {
        CHECK(std::abs(field_first_solution(m, st, 0.0, t).e[0]) <= 1e-12);
        CHECK(std::abs(field_first_solution(m, st, m.length, t).e[0]) <= 1e-12);
    }
}

TEST_CASE("single cosine mode energy is m w^2 / 2") {
    CavityModel m;
    const ModeState st = ModeState::cosine(1);
    const double want = m.omega(1) * m.omega(1) / 2;  // frozen oracle: q = cos wt, m = 1
    for (double t : {0.0, 0.17, 0.5}) {
        CHECK(mode_hamiltonian(m, st, t) == doctest::Approx(want).epsilon(1e-12));
        CHECK(cavity_energy(m, st, t) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("field energy equals the mode Hamiltonian and is conserved") {
    CavityModel m;
    m.n_modes = 6;
    m.mass = {1.0, 2.0, 0.5, 1.5, 3.0, 0.7};
    const ModeState st = ModeState::random(6, 12);
    const double e0 = cavity_energy(m, st, 0.0);
    for (double t : {0.1, 0.45, 1.3}) {
        CHECK(cavity_energy(m, st, t) == doctest::Approx(e0).epsilon(1e-10));
        CHECK(mode_hamiltonian(m, st, t) == doctest::Approx(e0).epsilon(1e-10));
    }
}

TEST_CASE("grid resolution is enforced") {
    CavityModel m;
    m.n_modes = 16;
    const ModeState st = ModeState::random(16, 1);
    CHECK_THROWS_AS(maxwell_residual(m, first_solution_source(m, st), SampleGrid::cavity(m, 8, 8)), DomainError);
}

TEST_CASE("invalid models are rejected") {
    CavityModel m;
    m.length = -1;
    CHECK_THROWS_AS(m.validate(), DomainError);
    CavityModel n;
    n.n_modes = 2;
    n.mass = {1.0};
    CHECK_THROWS_AS(n.validate(), DomainError);
}

TEST_CASE("quaternion assembly keeps sectors separate") {
    CavityModel m;
    m.n_modes = 2;
    const ModeState st = ModeState::random(2, 3);
    const FieldSource f = first_solution_source(m, st);
    const Domain d{0.0, m.length, 0.0, m.period()};
    const QuaternionField q = assemble_quaternion_field({f, nullptr, nullptr, nullptr}, {d, d, d, d});
    const SampleGrid g = SampleGrid::cavity(m, 32, 32);
    CHECK(worst(maxwell_residual(q, nullptr, g, m.k)) <= 1e-10);
    const PackedQuaternion pq = evaluate_packed(q, 0.3, 0.2);
    CHECK(std::abs(pq.e[0].c_e - field_first_solution(m, st, 0.3, 0.2).e[0]) <= 1e-14);
    const Domain other{0.0, 2 * m.length, 0.0, m.period()};
    CHECK_THROWS_AS(assemble_quaternion_field({f, f, f, f}, {d, other, d, d}), DomainError);
}

TEST_CASE("static uniform field satisfies Cauchy-Riemann") {
    FieldSource stat = [](double, double) {
        FieldJet j;
        j.f.e[0] = 2.0;
        j.f.h[1] = -1.0;
        return j;
    };
    CavityModel m;
    CHECK(cauchy_riemann_residual(stat, SampleGrid::cavity(m, 8, 8), m.k) <= 1e-14);
}

}  // TEST_SUITE
