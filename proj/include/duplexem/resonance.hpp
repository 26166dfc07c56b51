#pragma once

#include <vector>

#include "duplexem/types.hpp"

namespace duplexem {

struct ResonanceParams {
    double gamma_e = 1.0;
    double S = 1.0;
    double tau = 1.0;
    double E1 = 1.0;
    double nu0 = 0.0;
    double A_param = 0.0;  // splitting parameter, nu_n = nu0 - A n^2
    double L_chain = 1.0;
    double a_lattice = 1.0;
    double J_E = 0.0;
};

// A = 2 pi a^2 S |J_E| / (hbar^2 L^2)
double splitting_parameter(double a_lattice, double S, double J_E, double L_chain, double hbar);

double dispersion(const ResonanceParams& p, int n);
// w_n = 2 pi nu_n
double mode_angular_frequency(const ResonanceParams& p, int n);
cplx mode_amplitude(const ResonanceParams& p, int n, double omega);

struct DispersionFit {
    double nu0 = 0.0;
    double A_param = 0.0;
    std::vector<double> residuals;
    double max_abs_residual = 0.0;
};

// Least squares of nu_n on n^2.
DispersionFit fit_dispersion(const std::vector<double>& n, const std::vector<double>& nu);

// Ratio of two fitted splitting parameters (e.g. Raman vs IR).
double splitting_ratio(double A_first, double A_second);

}  // namespace duplexem
