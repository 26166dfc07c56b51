#include "duplexem/dualsym.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace duplexem {

DualAngle DualAngle::make(double theta, double vartheta) {
    const double two_pi = 2.0 * kPi;
    double t = std::fmod(theta, two_pi);
    if (t < 0) t += two_pi;
    return {t, vartheta};
}

// Exact values at multiples of pi/2 so the quarter-turn cases map components without rounding.
static void exact_cos_sin(double theta, double& c, double& s) {
    const double q = theta / (kPi / 2);
    const double r = std::nearbyint(q);
    if (std::abs(q - r) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(q))) {
        static constexpr double cs[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const int i = static_cast<int>(((static_cast<long long>(r) % 4) + 4) % 4);
        c = cs[i][0];
        s = cs[i][1];
        return;
    }
    c = std::cos(theta);
    s = std::sin(theta);
}

FieldPair dual_rotate(const FieldPair& f, double theta) {
    double c, s;
    exact_cos_sin(theta, c, s);
    return {cplx(c) * f.e + cplx(s) * f.h, cplx(c) * f.h - cplx(s) * f.e};
}

FieldPair hyperbolic_dual(const FieldPair& f, double vartheta) {
    const cplx ch(std::cosh(vartheta));
    const cplx ish(0.0, std::sinh(vartheta));
    return {ch * f.e + ish * f.h, ch * f.h - ish * f.e};
}

static Vec3c as_vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

static std::array<double, 3> unit_axis(const std::array<double, 3>& axis) {
    const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (!(n > 0)) throw DomainError("axis must be nonzero");
    return {axis[0] / n, axis[1] / n, axis[2] / n};
}

FieldPair hyperbolic_dual_axes(const FieldPair& f, double vartheta, const std::array<double, 3>& axis) {
    const Vec3c n = as_vec(unit_axis(axis));
    const cplx ch(std::cosh(vartheta));
    const cplx sh(std::sinh(vartheta));
    return {ch * f.e + sh * cross(f.h, n), ch * f.h - sh * cross(f.e, n)};
}

cplx invariant_scalar(const FieldPair& f) {
    return bilinear(f.e, f.e) - bilinear(f.h, f.h) + cplx(0, 2) * bilinear(f.e, f.h);
}

InvariantSet invariants(const FieldPair& f, double theta, double vartheta) {
    const cplx x = invariant_scalar(f);
    const cplx rotated = x * std::exp(cplx(0, -2.0 * theta));
    InvariantSet r;
    r.i1p = rotated.real();
    r.i2p = rotated.imag();
    r.k_inv = r.i1p * r.i1p + r.i2p * r.i2p;
    const double g = std::exp(2.0 * vartheta);
    r.i1h = x.real() * g;
    r.i2h = x.imag() * g;
    if (r.i2h != 0.0) r.w = r.i1h / r.i2h;
    return r;
}

FieldPair lorentz_boost_fields(const FieldPair& f, double beta, const std::array<double, 3>& axis, UnitSystem units,
                               const PhysicalConstants& k) {
    if (!(std::abs(beta) < 1.0)) throw DomainError("lorentz_boost_fields: |beta| must be < 1");
    const std::array<double, 3> nd = unit_axis(axis);
    const Vec3c n = as_vec(nd);
    const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    const double zscale = units == UnitSystem::si ? k.z0() : 1.0;

    auto split = [&](const Vec3c& v, Vec3c& par, Vec3c& perp) {
        const cplx p = bilinear(v, n);
        par = p * n;
        perp = v - par;
    };
    Vec3c e_par, e_perp, h_par, h_perp;
    split(f.e, e_par, e_perp);
    split(f.h, h_par, h_perp);
    const Vec3c e2 = e_par + cplx(gamma) * (e_perp + cplx(beta * zscale) * cross(h_perp, n));
    const Vec3c h2 = h_par + cplx(gamma) * (h_perp - cplx(beta / zscale) * cross(e_perp, n));
    return {e2, h2};
}

double combined_norm(const FieldPair& f) { return std::sqrt(norm2(f.e) + norm2(f.h)); }

double max_abs_diff(const FieldPair& a, const FieldPair& b) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i) {
        m = std::max(m, std::abs(a.e[static_cast<std::size_t>(i)] - b.e[static_cast<std::size_t>(i)]));
        m = std::max(m, std::abs(a.h[static_cast<std::size_t>(i)] - b.h[static_cast<std::size_t>(i)]));
    }
    return m;
}

}  // namespace duplexem
