#pragma once

#include <array>
#include <vector>

#include "duplexem/types.hpp"

namespace duplexem {

// x = c_e e + c_j j, with c_e = a1 + i a2 and c_j = a3 + i a4.
struct Quaternion {
    cplx c_e{};
    cplx c_j{};

    static Quaternion e() { return {1.0, 0.0}; }
    static Quaternion i() { return {cplx(0, 1), 0.0}; }
    static Quaternion j() { return {0.0, 1.0}; }
    static Quaternion k() { return {0.0, cplx(0, 1)}; }
    static Quaternion from_reals(double a1, double a2, double a3, double a4) {
        return {cplx(a1, a2), cplx(a3, a4)};
    }
    std::array<double, 4> reals() const { return {c_e.real(), c_e.imag(), c_j.real(), c_j.imag()}; }
};

Quaternion quaternion_mul(const Quaternion& x, const Quaternion& y);
Quaternion quaternion_conj(const Quaternion& x);
double quaternion_norm(const Quaternion& x);
bool approx_equal(const Quaternion& x, const Quaternion& y, double tol = 1e-12);

enum class MatrixKind { two_by_two, four_by_four_e, four_by_four_eprime };

struct MatrixRep {
    MatrixKind kind = MatrixKind::two_by_two;
    int n = 2;
    std::vector<double> entries;  // row-major n*n

    double at(int r, int c) const { return entries[static_cast<std::size_t>(r * n + c)]; }
    double& at(int r, int c) { return entries[static_cast<std::size_t>(r * n + c)]; }
};

MatrixRep matmul(const MatrixRep& a, const MatrixRep& b);
MatrixRep identity_rep(MatrixKind kind);
bool exactly_equal(const MatrixRep& a, const MatrixRep& b);
double max_abs_diff(const MatrixRep& a, const MatrixRep& b);

// Units [e1], [e2], [e3], [e4] of a 4x4 [0,1]-matrix basis.
struct CyclicBasis {
    MatrixKind kind = MatrixKind::four_by_four_e;
    std::array<MatrixRep, 4> unit;
};

CyclicBasis cyclic_basis(MatrixKind kind);

// re*[e1] + im*[e2] for 4x4 kinds, [[a,-b],[b,a]] for 2x2
MatrixRep complex_to_matrix(cplx z, MatrixKind kind);
// Inverse map; for 4x4 kinds reads coefficients c1 - c3 + i(c2 - c4).
cplx matrix_to_complex(const MatrixRep& m);

bool verify_cyclic_recurrence(const CyclicBasis& basis);
bool verify_cyclic_recurrence(MatrixKind kind);

// Permutation matrix P with P*e_k*P^T = e'_k for all k, found by exhaustive search.
struct PermutationSearch {
    bool found = false;
    std::array<int, 4> perm{};
    MatrixRep matrix;
};
PermutationSearch find_basis_isomorphism(const CyclicBasis& from, const CyclicBasis& to);

}  // namespace duplexem
