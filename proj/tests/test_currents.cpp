#include <random>

#include "doctest.h"
#include "duplexem/currents.hpp"

using namespace duplexem;

namespace {

double max_diff(const FourCurrent& a, const FourCurrent& b) {
    return std::max({std::abs(a.j3_1 - b.j3_1), std::abs(a.j3_2 - b.j3_2), std::abs(a.j4_1 - b.j4_1),
                     std::abs(a.j4_2 - b.j4_2)});
}

double size(const FourCurrent& a) {
    return std::max({std::abs(a.j3_1), std::abs(a.j3_2), std::abs(a.j4_1), std::abs(a.j4_2), 1.0});
}

}  // namespace

TEST_SUITE("currents") {

TEST_CASE("closed forms agree with the general bilinear forms") {
    CavityModel m;
    m.n_modes = 3;
    for (int sign : {1, -1}) {
        const ModeState st = ModeState::random(3, 17);
        const FieldFunctionSet fs = make_fieldset(m, st, sign);
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(0, 1);
        for (int i = 0; i < 20; ++i) {
            const double z = u(rng), t = 2 * u(rng);
            const FourCurrent a = classical_current(m, st, sign, z, t), b = current_general(fs, m.k, z, t);
            CHECK(max_diff(a, b) <= 1e-12 * size(a));
        }
    }
}

TEST_CASE("u-functions satisfy the wave equation") {
    CavityModel m;
    m.n_modes = 4;
    const FieldFunctionSet fs = make_fieldset(m, ModeState::random(4, 2), 1);
    for (int s = 1; s <= 2; ++s)
        for (int a = 1; a <= 4; ++a) {
            const UJet j = fs.eval(s, a, 0.37, 0.61);
            CHECK(std::abs(j.dzz - j.dtt / (m.k.c * m.k.c)) <= 1e-10 * std::max(1.0, std::abs(j.dzz)));
        }
    CHECK(lagrange_residual(fs, 0.37, 0.61) <= 1e-9);
}

TEST_CASE("continuity, relative to the size of the cancelled terms") {
    for (std::uint64_t seed : {3u, 4u}) {
        CavityModel m;
        m.n_modes = 4;
        const FieldFunctionSet fs = make_fieldset(m, ModeState::random(4, seed), -1);
        const SampleGrid g = SampleGrid::cavity(m, 32, 32);
        CHECK(continuity_residual(fs, m.k, g, &m) / continuity_scale(fs, m.k, g) <= 1e-10);
    }
}

TEST_CASE("j4 of the first kind vanishes for |C1| = |C2|") {
    CavityModel m;
    m.n_modes = 3;
    ModeState st = ModeState::random(3, 6);
    for (auto& c : st.modes) c.c2 = std::polar(std::abs(c.c1), 1.234);
    ModeState ref = st;
    for (auto& c : ref.modes) c.c2 = 0.0;
    for (double t : {0.1, 0.5, 0.9}) {
        const double scale = std::abs(classical_current(m, ref, 1, 0.4, t).j4_1);
        CHECK(std::abs(classical_current(m, st, 1, 0.4, t).j4_1) <= 1e-12 * scale);
    }
}

TEST_CASE("first-kind current is gauge invariant, scales with beta^2") {
    CavityModel m;
    m.n_modes = 2;
    const FieldFunctionSet fs = make_fieldset(m, ModeState::random(2, 9), 1);
    const FourCurrent a = current_general(fs, m.k, 0.3, 0.4);
    const FourCurrent b = current_general(gauge_transform(fs, 0.8, 1.0), m.k, 0.3, 0.4);
    CHECK(max_diff(a, b) <= 1e-12 * size(a));
    const FourCurrent c = current_general(gauge_transform(fs, 0.0, 2.0), m.k, 0.3, 0.4);
    CHECK(std::abs(c.j3_1 - 4.0 * a.j3_1) <= 1e-12 * size(a) * 4);
}

TEST_CASE("Noether charges are conserved") {
    CavityModel m;
    m.n_modes = 3;
    const FieldFunctionSet fs = make_fieldset(m, ModeState::random(3, 21), 1);
    const NoetherCharge n0 = noether_charge(fs, 0.0);
    for (int i = 1; i <= 8; ++i) {
        const NoetherCharge ni = noether_charge(fs, 2.0 * i / 8);
        CHECK(std::abs(ni.q1 - n0.q1) <= 1e-8 * std::max(1.0, std::abs(n0.q1)));
        CHECK(std::abs(ni.q2 - n0.q2) <= 1e-8 * std::max(1.0, std::abs(n0.q2)));
    }
    const cplx q2 = q2_analytic_form(fs, 0.3, fs.z_min, fs.z_max);
    CHECK(std::abs(cplx(0, 1) * q2 - noether_charge(fs, 0.3).q2) <= 1e-10 * std::max(1.0, std::abs(q2)));
}

TEST_CASE("plane wave charge oracle") {
    // u = amp exp(i(kz - wt)): Q1 = (2/c) Im(u* du/dt) A L = -2 w |amp|^2 A L / c
    const double k = 2 * kPi, w = 2 * kPi, L = 1.0;
    const FieldFunctionSet fs = plane_wave_fieldset(k, w, 1.0, cplx(0.6, 0.8), L);
    const NoetherCharge n = noether_charge(fs, 0.25);
    CHECK(std::abs(n.q1) == doctest::Approx(2 * w * fs.area * L).epsilon(1e-10));
    CHECK(std::abs(n.q2) <= 1e-10);
}

TEST_CASE("spirality is invariant under dual rotation") {
    CavityModel m;
    m.n_modes = 2;
    const FieldFunctionSet fs = make_fieldset(m, ModeState::random(2, 31), 1);
    const SpinDensity a = spirality(fs, 0.2);
    const SpinDensity b = spirality(dual_rotate_fieldset(fs, 0.7), 0.2);
    CHECK(b.s4_3 == doctest::Approx(a.s4_3).epsilon(1e-10));
    const SpinDensity c = spirality(drop_sector(fs, 2), 0.2);
    CHECK(std::abs(c.s4_3) <= 1e-14);
}

TEST_CASE("charge ratio is the square root of J_E/J_H") {
    CHECK(charge_ratio_estimate(1.2e4, 1.0) == doctest::Approx(std::sqrt(1.2e4)).epsilon(1e-15));
    CHECK(charge_ratio_estimate(3.2e4, 2.0) == doctest::Approx(std::sqrt(1.6e4)).epsilon(1e-15));
    CHECK_THROWS_AS(charge_ratio_estimate(1.0, 0.0), DomainError);
}

TEST_CASE("quantized continuity, commutator and finite-difference routes") {
    CavityModel m;
    m.n_modes = 2;
    const SampleGrid g = SampleGrid::cavity(m, 8, 8);
    const QuantizedContinuity a = quantized_continuity(m, 8, g);
    CHECK(a.im_residual <= 1e-10);
    CHECK(a.re_residual <= 1e-10);
    const QuantizedContinuity b = quantized_continuity_fd(m, 8, g);
    CHECK(b.im_residual <= 1e-5);
    const QuantizedContinuity lit = quantized_continuity(m, 8, g, 1, ImJ4Prefactor::literal);
    CHECK(lit.im_residual > 1e-3);
}

TEST_CASE("quantized Im j3 is i times a Hermitian operator, Re j3 vanishes") {
    CavityModel m;
    m.n_modes = 2;
    const auto q = quantized_current(m, Scheme::time_local, 6, 0.3, 0.2);
    REQUIRE(q.size() == 2);
    for (const auto& mode : q) {
        CHECK((mode.im_j3 + mode.im_j3.adjoint()).norm() <= 1e-12 * std::max(1.0, mode.im_j3.norm()));
        CHECK(mode.im_j3.norm() > 0.0);
        CHECK(mode.re_j3.norm() <= 1e-12);
    }
}

}  // TEST_SUITE
