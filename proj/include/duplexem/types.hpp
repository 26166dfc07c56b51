#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace duplexem {

using cplx = std::complex<double>;
using Vec3c = std::array<cplx, 3>;

inline constexpr double kPi = 3.14159265358979323846;

// Thrown for violated preconditions; the C API maps it to DX_ERR_DOMAIN.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a numerical routine cannot deliver its contract.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldPair {
    Vec3c e{};
    Vec3c h{};
};

enum class UnitSystem { symmetric, si };

struct PhysicalConstants {
    double c = 1.0;
    double eps0 = 1.0;
    double mu0 = 1.0;
    double hbar = 1.0;
    double lambda0 = 1.0;
    // charge normalization of the current formulas
    double e_charge = 1.0;

    double z0() const;
    double lambda_v() const { return 1.0 / z0(); }

    static PhysicalConstants natural() { return {}; }
    static PhysicalConstants si();
};

Vec3c operator+(const Vec3c& a, const Vec3c& b);
Vec3c operator-(const Vec3c& a, const Vec3c& b);
Vec3c operator*(cplx s, const Vec3c& a);
Vec3c cross(const Vec3c& a, const Vec3c& b);
// unconjugated bilinear product sum a_k b_k
cplx bilinear(const Vec3c& a, const Vec3c& b);
double norm2(const Vec3c& a);  // conjugated, sum |a_k|^2

}  // namespace duplexem
