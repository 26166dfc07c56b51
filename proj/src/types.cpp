#include "duplexem/types.hpp"

#include <cmath>

namespace duplexem {

double PhysicalConstants::z0() const { return std::sqrt(mu0 / eps0); }

PhysicalConstants PhysicalConstants::si() {
    PhysicalConstants k;
    k.c = 299792458.0;
    k.mu0 = 1.25663706212e-6;
    k.eps0 = 1.0 / (k.mu0 * k.c * k.c);
    k.hbar = 1.054571817e-34;
    k.lambda0 = k.hbar;
    k.e_charge = 1.602176634e-19;
    return k;
}

Vec3c operator+(const Vec3c& a, const Vec3c& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3c operator-(const Vec3c& a, const Vec3c& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3c operator*(cplx s, const Vec3c& a) { return {s * a[0], s * a[1], s * a[2]}; }

Vec3c cross(const Vec3c& a, const Vec3c& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

cplx bilinear(const Vec3c& a, const Vec3c& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm2(const Vec3c& a) { return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]); }

}  // namespace duplexem
