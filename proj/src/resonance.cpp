#include "duplexem/resonance.hpp"

#include <gsl/gsl_fit.h>

#include <algorithm>
#include <cmath>

namespace duplexem {

double splitting_parameter(double a_lattice, double S, double J_E, double L_chain, double hbar) {
    if (!(L_chain > 0) || !(hbar > 0)) throw DomainError("splitting_parameter: L and hbar must be positive");
    return 2.0 * kPi * a_lattice * a_lattice * S * std::abs(J_E) / (hbar * hbar * L_chain * L_chain);
}

double dispersion(const ResonanceParams& p, int n) {
    if (n < 0) throw DomainError("dispersion: n must be >= 0");
    return p.nu0 - p.A_param * static_cast<double>(n) * n;
}

double mode_angular_frequency(const ResonanceParams& p, int n) { return 2.0 * kPi * dispersion(p, n); }

cplx mode_amplitude(const ResonanceParams& p, int n, double omega) {
    if (n < 1) throw DomainError("mode_amplitude: n must be >= 1");
    if (n % 2 == 0) return 0.0;
    const double d = mode_angular_frequency(p, n) - omega;
    const cplx pre(0, -p.gamma_e * p.S * p.tau * p.tau * p.E1 / (kPi * n));
    return pre * cplx(d, -1.0 / p.tau) / (1.0 + d * d * p.tau * p.tau);
}

DispersionFit fit_dispersion(const std::vector<double>& n, const std::vector<double>& nu) {
    if (n.size() != nu.size() || n.size() < 2) throw DomainError("fit_dispersion: need >= 2 matching points");
    std::vector<double> x(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) x[i] = n[i] * n[i];
    double c0 = 0, c1 = 0, cov00 = 0, cov01 = 0, cov11 = 0, sumsq = 0;
    if (gsl_fit_linear(x.data(), 1, nu.data(), 1, x.size(), &c0, &c1, &cov00, &cov01, &cov11, &sumsq) != 0)
        throw NumericError("fit_dispersion: regression failed");
    DispersionFit f;
    f.nu0 = c0;
    f.A_param = -c1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        f.residuals.push_back(nu[i] - (c0 + c1 * x[i]));
        f.max_abs_residual = std::max(f.max_abs_residual, std::abs(f.residuals.back()));
    }
    return f;
}

double splitting_ratio(double A_first, double A_second) {
    if (A_second == 0.0) throw DomainError("splitting_ratio: zero denominator");
    return A_first / A_second;
}

}  // namespace duplexem
