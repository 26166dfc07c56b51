#pragma once

#include <functional>

#include "duplexem/types.hpp"

namespace duplexem::detail {

// Composite Gauss-Legendre; panels grow until one more panel changes the result by < tol.
cplx gl_integrate(const std::function<cplx(double)>& f, double a, double b, int min_panels = 2,
                  double tol = 1e-12, int order = 20);

// GSL QAGS adaptive quadrature.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b, double epsabs = 1e-14,
                          double epsrel = 1e-13);

}  // namespace duplexem::detail
