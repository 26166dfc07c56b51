#include "duplexem/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace duplexem {

// Cayley-Dickson product: (z1, w1)(z2, w2) = (z1 z2 - w1 conj(w2), z1 w2 + w1 conj(z2))
Quaternion quaternion_mul(const Quaternion& x, const Quaternion& y) {
    return {x.c_e * y.c_e - x.c_j * std::conj(y.c_j), x.c_e * y.c_j + x.c_j * std::conj(y.c_e)};
}

Quaternion quaternion_conj(const Quaternion& x) { return {std::conj(x.c_e), -x.c_j}; }

double quaternion_norm(const Quaternion& x) { return std::sqrt(std::norm(x.c_e) + std::norm(x.c_j)); }

bool approx_equal(const Quaternion& x, const Quaternion& y, double tol) {
    return std::abs(x.c_e - y.c_e) <= tol && std::abs(x.c_j - y.c_j) <= tol;
}

MatrixRep matmul(const MatrixRep& a, const MatrixRep& b) {
    if (a.n != b.n) throw DomainError("matmul: size mismatch");
    MatrixRep r{a.kind, a.n, std::vector<double>(a.entries.size(), 0.0)};
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) {
            const double v = a.at(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < a.n; ++j) r.at(i, j) += v * b.at(k, j);
        }
    return r;
}

static int dim_of(MatrixKind kind) { return kind == MatrixKind::two_by_two ? 2 : 4; }

MatrixRep identity_rep(MatrixKind kind) {
    const int n = dim_of(kind);
    MatrixRep r{kind, n, std::vector<double>(static_cast<std::size_t>(n * n), 0.0)};
    for (int i = 0; i < n; ++i) r.at(i, i) = 1.0;
    return r;
}

bool exactly_equal(const MatrixRep& a, const MatrixRep& b) { return a.n == b.n && a.entries == b.entries; }

double max_abs_diff(const MatrixRep& a, const MatrixRep& b) {
    if (a.n != b.n) throw DomainError("max_abs_diff: size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
    return m;
}

static MatrixRep from_perm(MatrixKind kind, const std::array<int, 4>& cols) {
    MatrixRep r{kind, 4, std::vector<double>(16, 0.0)};
    for (int i = 0; i < 4; ++i) r.at(i, cols[static_cast<std::size_t>(i)]) = 1.0;
    return r;
}

CyclicBasis cyclic_basis(MatrixKind kind) {
    CyclicBasis b;
    b.kind = kind;
    if (kind == MatrixKind::four_by_four_e) {
        b.unit = {from_perm(kind, {0, 1, 2, 3}), from_perm(kind, {1, 2, 3, 0}), from_perm(kind, {2, 3, 0, 1}),
                  from_perm(kind, {3, 0, 1, 2})};
    } else if (kind == MatrixKind::four_by_four_eprime) {
        b.unit = {from_perm(kind, {0, 1, 2, 3}), from_perm(kind, {2, 3, 1, 0}), from_perm(kind, {1, 0, 3, 2}),
                  from_perm(kind, {3, 2, 0, 1})};
    } else {
        throw DomainError("cyclic_basis: two_by_two has no [0,1] cyclic basis");
    }
    return b;
}

MatrixRep complex_to_matrix(cplx z, MatrixKind kind) {
    const double a = z.real();
    const double b = z.imag();
    if (kind == MatrixKind::two_by_two) {
        MatrixRep r{kind, 2, {a, -b, b, a}};
        return r;
    }
    // -1 is represented by [e3] and -i by [e4], so all entries stay non-negative.
    const CyclicBasis basis = cyclic_basis(kind);
    MatrixRep r{kind, 4, std::vector<double>(16, 0.0)};
    const double coef[4] = {std::max(a, 0.0), std::max(b, 0.0), std::max(-a, 0.0), std::max(-b, 0.0)};
    for (int u = 0; u < 4; ++u)
        for (std::size_t i = 0; i < 16; ++i) r.entries[i] += coef[u] * basis.unit[static_cast<std::size_t>(u)].entries[i];
    return r;
}

cplx matrix_to_complex(const MatrixRep& m) {
    if (m.kind == MatrixKind::two_by_two) return {m.at(0, 0), m.at(1, 0)};
    const CyclicBasis basis = cyclic_basis(m.kind);
    double coef[4];
    for (int u = 0; u < 4; ++u) {
        // units of a cyclic group have disjoint supports; read the coefficient at row 0
        const auto& e = basis.unit[static_cast<std::size_t>(u)];
        int col = 0;
        while (e.at(0, col) == 0.0) ++col;
        coef[u] = m.at(0, col);
    }
    return {coef[0] - coef[2], coef[1] - coef[3]};
}

bool verify_cyclic_recurrence(const CyclicBasis& basis) {
    if (basis.kind == MatrixKind::two_by_two) throw DomainError("verify_cyclic_recurrence: two_by_two kind rejected");
    const auto& e = basis.unit;
    const MatrixRep sq = matmul(e[1], e[1]);
    const MatrixRep cube = matmul(sq, e[1]);
    const MatrixRep fourth = matmul(cube, e[1]);
    return exactly_equal(e[0], identity_rep(basis.kind)) && exactly_equal(sq, e[2]) && exactly_equal(cube, e[3]) &&
           exactly_equal(fourth, e[0]);
}

bool verify_cyclic_recurrence(MatrixKind kind) { return verify_cyclic_recurrence(cyclic_basis(kind)); }

PermutationSearch find_basis_isomorphism(const CyclicBasis& from, const CyclicBasis& to) {
    PermutationSearch out;
    std::array<int, 4> perm = {0, 1, 2, 3};
    do {
        const MatrixRep p = from_perm(to.kind, perm);
        MatrixRep pt = p;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) pt.at(i, j) = p.at(j, i);
        bool ok = true;
        for (std::size_t u = 0; u < 4 && ok; ++u) {
            MatrixRep img = matmul(matmul(p, from.unit[u]), pt);
            img.kind = to.kind;
            ok = exactly_equal(img, to.unit[u]);
        }
        if (ok) {
            out.found = true;
            out.perm = perm;
            out.matrix = p;
            return out;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace duplexem
