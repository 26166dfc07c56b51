#include <random>

#include "doctest.h"
#include "duplexem/resonance.hpp"

using namespace duplexem;

TEST_SUITE("resonance") {

TEST_CASE("even modes are silent") {
    ResonanceParams p;
    p.nu0 = 5;
    p.A_param = 0.02;
    for (int n = 2; n <= 40; n += 2)
        for (double w : {0.0, 1.0, mode_angular_frequency(p, n)}) CHECK(std::abs(mode_amplitude(p, n, w)) == 0.0);
}

TEST_CASE("odd amplitudes follow a Lorentzian with 1/n weight") {
    ResonanceParams p;
    p.gamma_e = 1.7;
    p.S = 0.5;
    p.tau = 3.0;
    p.E1 = 2.0;
    p.nu0 = 4.0;
    p.A_param = 0.03;
    for (int n : {1, 3, 5, 7}) {
        for (double dw : {0.0, 0.1, -0.4, 2.0}) {
            const double w = mode_angular_frequency(p, n) + dw;
            const double peak = p.gamma_e * p.S * p.tau * p.E1 / (kPi * n);
            const double want = peak / std::sqrt(1 + dw * dw * p.tau * p.tau);
            CHECK(std::abs(mode_amplitude(p, n, w)) == doctest::Approx(want).epsilon(1e-13));
        }
    }
    const double r = std::abs(mode_amplitude(p, 1, mode_angular_frequency(p, 1))) /
                     std::abs(mode_amplitude(p, 3, mode_angular_frequency(p, 3)));
    CHECK(std::abs(r - 3.0) <= 1e-12);
}

TEST_CASE("dispersion fit recovers the generating parameters") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.5, 20.0), a(1e-4, 0.1);
    for (int trial = 0; trial < 20; ++trial) {
        ResonanceParams p;
        p.nu0 = u(rng);
        p.A_param = a(rng);
        std::vector<double> n, nu;
        for (int k = 1; k <= 11; k += 2) {
            n.push_back(k);
            nu.push_back(dispersion(p, k));
        }
        const DispersionFit f = fit_dispersion(n, nu);
        CHECK(std::abs(f.nu0 - p.nu0) <= 1e-10);
        CHECK(std::abs(f.A_param - p.A_param) <= 1e-10);
        CHECK(f.max_abs_residual <= 1e-10);
    }
}

TEST_CASE("splitting parameter formula") {
    CHECK(splitting_parameter(2.0, 0.5, -3.0, 4.0, 1.0) == doctest::Approx(2 * kPi * 4 * 0.5 * 3 / 16).epsilon(1e-15));
    CHECK(splitting_ratio(6.0, 3.0) == 2.0);
    CHECK_THROWS_AS(splitting_parameter(1, 1, 1, 0, 1), DomainError);
    CHECK_THROWS_AS(fit_dispersion({1.0}, {2.0}), DomainError);
    CHECK_THROWS_AS(mode_amplitude(ResonanceParams{}, 0, 1.0), DomainError);
}

}  // TEST_SUITE
