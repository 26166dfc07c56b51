#pragma once

namespace duplexem {

// Complete elliptic integrals, modulus convention: K(k) = int_0^{pi/2} dth / sqrt(1 - k^2 sin^2 th).
// Evaluated with the arithmetic-geometric mean.
double elliptic_K(double k);  // 0 <= k < 1, throws DomainError at k >= 1
double elliptic_E(double k);  // 0 <= k <= 1

// (K(k) - E(k)) / k^2 without cancellation for small k; pi/4 at k = 0.
double elliptic_KmE_over_m(double k);

}  // namespace duplexem
