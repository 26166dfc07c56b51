#pragma once

#include <cmath>
#include <optional>

#include "duplexem/types.hpp"

namespace duplexem {

struct DualAngle {
    double theta = 0.0;     // circular, reduced to [0, 2pi)
    double vartheta = 0.0;  // hyperbolic rapidity

    static DualAngle make(double theta, double vartheta = 0.0);
};

struct InvariantSet {
    double i1p = 0.0;  // I1'
    double i2p = 0.0;  // I2'
    double k_inv = 0.0;
    double i1h = 0.0;  // I1''
    double i2h = 0.0;  // I2''
    std::optional<double> w;  // I1''/I2'', empty when I2'' == 0
};

FieldPair dual_rotate(const FieldPair& f, double theta);

// (E cosh + iH sinh, -iE sinh + H cosh)
FieldPair hyperbolic_dual(const FieldPair& f, double vartheta);

// Orthogonal-axes realization: i acts as the rotation J(v) = v x n about the unit axis n.
FieldPair hyperbolic_dual_axes(const FieldPair& f, double vartheta, const std::array<double, 3>& axis);

// E^2 - H^2 + 2i E.H with unconjugated products
cplx invariant_scalar(const FieldPair& f);

InvariantSet invariants(const FieldPair& f, double theta, double vartheta);

// Boost with velocity beta*c along `axis`. Symmetric units treat E and H on equal footing;
// SI scales H by Z0.
FieldPair lorentz_boost_fields(const FieldPair& f, double beta,
                               const std::array<double, 3>& axis = {0, 0, 1},
                               UnitSystem units = UnitSystem::symmetric,
                               const PhysicalConstants& k = PhysicalConstants::natural());

double combined_norm(const FieldPair& f);
double max_abs_diff(const FieldPair& a, const FieldPair& b);

}  // namespace duplexem
