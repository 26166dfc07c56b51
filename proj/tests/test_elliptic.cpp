#include <gsl/gsl_sf_ellint.h>

#include "doctest.h"
#include "duplexem/elliptic.hpp"
#include "duplexem/types.hpp"
#include "quad.hpp"

using namespace duplexem;

TEST_SUITE("elliptic") {

TEST_CASE("special values") {
    CHECK(std::abs(elliptic_K(0.0) - kPi / 2) <= 1e-15);
    CHECK(std::abs(elliptic_E(0.0) - kPi / 2) <= 1e-15);
    CHECK(std::abs(elliptic_E(1.0) - 1.0) <= 1e-15);
    CHECK(elliptic_KmE_over_m(0.0) == doctest::Approx(kPi / 4).epsilon(1e-15));
    CHECK_THROWS_AS(elliptic_K(1.0), DomainError);
    CHECK_THROWS_AS(elliptic_E(1.5), DomainError);
}

TEST_CASE("K(1/sqrt 2) against Gauss-Legendre and the lemniscate constant") {
    const double k = 1 / std::sqrt(2.0);
    const double gl = detail::gl_integrate(
                          [k](double t) { return cplx(1 / std::sqrt(1 - k * k * std::sin(t) * std::sin(t))); }, 0.0,
                          kPi / 2, 2, 1e-16)
                          .real();
    CHECK(std::abs(elliptic_K(k) - gl) / gl <= 1e-13);
    CHECK(elliptic_K(k) == doctest::Approx(1.8540746773013717).epsilon(1e-15));  // Gamma(1/4)^2 / (4 sqrt(pi))
}

TEST_CASE("agree with GSL over the modulus range") {
    for (double k = 0.0; k < 0.999; k += 0.0371) {
        CHECK(elliptic_K(k) == doctest::Approx(gsl_sf_ellint_Kcomp(k, GSL_PREC_DOUBLE)).epsilon(1e-14));
        CHECK(elliptic_E(k) == doctest::Approx(gsl_sf_ellint_Ecomp(k, GSL_PREC_DOUBLE)).epsilon(1e-14));
    }
}

TEST_CASE("Legendre relation") {
    for (double k : {0.1, 0.4, 0.8, 0.95}) {
        const double kp = std::sqrt(1 - k * k);
        const double l = elliptic_E(k) * elliptic_K(kp) + elliptic_E(kp) * elliptic_K(k) - elliptic_K(k) * elliptic_K(kp);
        CHECK(l == doctest::Approx(kPi / 2).epsilon(1e-14));
    }
}

TEST_CASE("(K - E)/k^2 has no cancellation loss at small k") {
    for (double k : {1e-8, 1e-5, 1e-3, 0.1, 0.5, 0.9}) {
        const double m = k * k;
        const double series = kPi / 4 * (1 + 3 * m / 8 + 15 * m * m / 64);  // leading terms
        if (k <= 1e-3) CHECK(elliptic_KmE_over_m(k) == doctest::Approx(series).epsilon(1e-12));
        else CHECK(elliptic_KmE_over_m(k) == doctest::Approx((elliptic_K(k) - elliptic_E(k)) / m).epsilon(1e-12));
    }
}

}  // TEST_SUITE
