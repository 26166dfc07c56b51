#include <random>

#include "doctest.h"
#include "duplexem/algebra.hpp"

using namespace duplexem;

namespace {

// Hamilton product on (w, x, y, z) components, written out independently of the library.
std::array<double, 4> hamilton(const std::array<double, 4>& p, const std::array<double, 4>& q) {
    return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
            p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
            p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("unit products") {
    const auto e = Quaternion::e(), i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
    const Quaternion minus_e{-1.0, 0.0};
    CHECK(approx_equal(quaternion_mul(i, i), minus_e));
    CHECK(approx_equal(quaternion_mul(j, j), minus_e));
    CHECK(approx_equal(quaternion_mul(k, k), minus_e));
    CHECK(approx_equal(quaternion_mul(i, j), k));
    CHECK(approx_equal(quaternion_mul(j, k), i));
    CHECK(approx_equal(quaternion_mul(k, i), j));
    CHECK(approx_equal(quaternion_mul(j, i), Quaternion{0.0, cplx(0, -1)}));
    CHECK(approx_equal(quaternion_mul(e, k), k));
}

TEST_CASE("product matches the component oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-2, 2);
    for (int n = 0; n < 200; ++n) {
        const auto x = Quaternion::from_reals(d(rng), d(rng), d(rng), d(rng));
        const auto y = Quaternion::from_reals(d(rng), d(rng), d(rng), d(rng));
        const auto want = hamilton(x.reals(), y.reals());
        const auto got = quaternion_mul(x, y).reals();
        for (int c = 0; c < 4; ++c) CHECK(got[static_cast<std::size_t>(c)] == doctest::Approx(want[static_cast<std::size_t>(c)]).epsilon(1e-14));
    }
}

TEST_CASE("conjugate and norm") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-2, 2);
    for (int n = 0; n < 100; ++n) {
        const auto x = Quaternion::from_reals(d(rng), d(rng), d(rng), d(rng));
        const auto r = x.reals();
        const double n2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + r[3] * r[3];
        CHECK(quaternion_norm(x) == doctest::Approx(std::sqrt(n2)).epsilon(1e-14));
        const auto xx = quaternion_mul(x, quaternion_conj(x));
        CHECK(approx_equal(xx, Quaternion{n2, 0.0}, 1e-12));
    }
}

TEST_CASE("2x2 map is an exact homomorphism") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-3, 3);
    for (int n = 0; n < 500; ++n) {
        const cplx a(d(rng), d(rng)), b(d(rng), d(rng));
        const auto m = matmul(complex_to_matrix(a, MatrixKind::two_by_two), complex_to_matrix(b, MatrixKind::two_by_two));
        CHECK(std::abs(matrix_to_complex(m) - a * b) <= 1e-13);
    }
}

TEST_CASE("4x4 maps decode products for both bases") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-3, 3);
    for (MatrixKind k : {MatrixKind::four_by_four_e, MatrixKind::four_by_four_eprime}) {
        for (int n = 0; n < 300; ++n) {
            const cplx a(d(rng), d(rng)), b(d(rng), d(rng));
            const auto m = matmul(complex_to_matrix(a, k), complex_to_matrix(b, k));
            CHECK(std::abs(matrix_to_complex(m) - a * b) <= 1e-13);
            for (double v : complex_to_matrix(a, k).entries) CHECK(v >= 0.0);
        }
    }
}

TEST_CASE("units represent 1, i, -1, -i") {
    for (MatrixKind k : {MatrixKind::four_by_four_e, MatrixKind::four_by_four_eprime}) {
        const auto b = cyclic_basis(k);
        CHECK(exactly_equal(complex_to_matrix(1.0, k), b.unit[0]));
        CHECK(exactly_equal(complex_to_matrix(cplx(0, 1), k), b.unit[1]));
        CHECK(exactly_equal(complex_to_matrix(-1.0, k), b.unit[2]));
        CHECK(exactly_equal(complex_to_matrix(cplx(0, -1), k), b.unit[3]));
        CHECK(verify_cyclic_recurrence(k));
    }
}

TEST_CASE("cyclic recurrence rejects a broken basis and the 2x2 kind") {
    auto b = cyclic_basis(MatrixKind::four_by_four_e);
    std::swap(b.unit[2], b.unit[3]);
    CHECK_FALSE(verify_cyclic_recurrence(b));
    CHECK_THROWS_AS(verify_cyclic_recurrence(MatrixKind::two_by_two), DomainError);
    CHECK_THROWS_AS(cyclic_basis(MatrixKind::two_by_two), DomainError);
}

TEST_CASE("basis isomorphism is a permutation similarity") {
    const auto from = cyclic_basis(MatrixKind::four_by_four_e);
    const auto to = cyclic_basis(MatrixKind::four_by_four_eprime);
    const auto r = find_basis_isomorphism(from, to);
    REQUIRE(r.found);
    MatrixRep pt = r.matrix;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) pt.at(i, j) = r.matrix.at(j, i);
    CHECK(exactly_equal(matmul(r.matrix, pt), identity_rep(MatrixKind::four_by_four_eprime)));
    for (std::size_t u = 0; u < 4; ++u) CHECK(exactly_equal(matmul(matmul(r.matrix, from.unit[u]), pt), to.unit[u]));
}

TEST_CASE("matrix product associativity on [0,1] units") {
    const auto b = cyclic_basis(MatrixKind::four_by_four_eprime);
    for (const auto& x : b.unit)
        for (const auto& y : b.unit)
            for (const auto& z : b.unit) CHECK(exactly_equal(matmul(matmul(x, y), z), matmul(x, matmul(y, z))));
}

}  // TEST_SUITE
