#include <doctest.h>

#include "djcm/linalg.hpp"
#include "test_support.hpp"

using namespace djcm;

namespace {

ComplexMatrix reconstruct(const HermitianEigen& e) {
    const std::size_t n = e.vectors.dim();
    ComplexMatrix d(n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = e.values[k];
    return e.vectors * d * e.vectors.adjoint();
}

}  // namespace

TEST_CASE("hermitian_eig: identity, diagonal and Pauli-x") {
    const auto id = hermitian_eig(ComplexMatrix::identity(4));
    for (double v : id.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(max_abs_diff(id.vectors * id.vectors.adjoint(), ComplexMatrix::identity(4)) < 1e-14);

    const auto diag = hermitian_eig(ComplexMatrix::diagonal({1.0, 3.0}));
    CHECK(diag.values[0] == doctest::Approx(3.0));
    CHECK(diag.values[1] == doctest::Approx(1.0));

    // det(x I - sigma_x) = x^2 - 1.
    const auto px = hermitian_eig(pauli_x());
    CHECK(px.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(px.values[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input and names the entry") {
    ComplexMatrix m = ComplexMatrix::identity(3);
    m(0, 2) = Complex(0.5, 0.0);
    try {
        (void)hermitian_eig(m);
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("(0, 2)") != std::string::npos);
    }
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices up to dim 16") {
    std::mt19937_64 rng(7);
    for (std::size_t dim : {1u, 2u, 3u, 4u, 8u, 9u, 16u}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto m = testing::random_hermitian(rng, dim);
            const auto e = hermitian_eig(m);
            CHECK(max_abs_diff(reconstruct(e), m) < 1e-10);
            CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, ComplexMatrix::identity(dim)) < 1e-12);
            for (std::size_t k = 1; k < dim; ++k) CHECK(e.values[k - 1] >= e.values[k]);
        }
    }
}

TEST_CASE("principal_sqrt examples") {
    CHECK(max_abs_diff(principal_sqrt(ComplexMatrix::identity(4)), ComplexMatrix::identity(4)) < 1e-14);
    CHECK(max_abs_diff(principal_sqrt(ComplexMatrix::diagonal({4.0, 9.0})),
                       ComplexMatrix::diagonal({2.0, 3.0})) < 1e-14);

    const double h = 1.0 / std::sqrt(2.0);
    const std::array<Complex, 4> phi = {0.0, h, h, 0.0};
    const auto proj = ComplexMatrix::outer(phi);
    CHECK(max_abs_diff(principal_sqrt(proj), proj) < 1e-12);
}

TEST_CASE("principal_sqrt squares back for random PSD matrices, including rank-deficient ones") {
    std::mt19937_64 rng(11);
    for (std::size_t dim : {2u, 4u, 9u, 16u}) {
        for (std::size_t rank : {std::size_t{0}, std::size_t{1}, dim / 2}) {
            const auto m = testing::random_density(rng, dim, rank);
            const auto s = principal_sqrt(m);
            CHECK(max_abs_diff(s * s, m) < 1e-9);
            CHECK(hermiticity_defect(s) < 1e-12);
            CHECK(hermitian_eig(s).values.back() > -1e-9);
        }
    }
}

TEST_CASE("principal_sqrt: clipping window and domain error") {
    CHECK_NOTHROW(principal_sqrt(ComplexMatrix::diagonal({1.0, -5e-11})));
    CHECK_THROWS_AS(principal_sqrt(ComplexMatrix::diagonal({1.0, -1e-6})), std::domain_error);
}

TEST_CASE("kron examples and trace property") {
    CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
    CHECK(kron(ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({1.0, 0.0})) ==
          ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0}));

    // (-i)(-i) = -1 on the |00><11| corner, (-i)(i) = 1 on |01><10|.
    const auto yy = kron(pauli_y(), pauli_y());
    ComplexMatrix expected(4);
    expected(0, 3) = -1.0;
    expected(1, 2) = 1.0;
    expected(2, 1) = 1.0;
    expected(3, 0) = -1.0;
    CHECK(max_abs_diff(yy, expected) == 0.0);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = testing::random_matrix(rng, 3);
        const auto b = testing::random_matrix(rng, 4);
        CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) < 1e-12);
    }
}

TEST_CASE("partial_trace_qubits examples") {
    std::mt19937_64 rng(5);
    const auto r1 = testing::random_density(rng, 2);
    const auto r2 = testing::random_density(rng, 2);
    const auto product = kron(r1, r2);
    CHECK(max_abs_diff(partial_trace_qubits(product, 2, {0}), r1) < 1e-14);
    CHECK(max_abs_diff(partial_trace_qubits(product, 2, {1}), r2) < 1e-14);

    const auto full = partial_trace_qubits(product, 2, std::span<const int>{});
    REQUIRE(full.dim() == 1);
    CHECK(std::abs(full(0, 0) - 1.0) < 1e-14);

    const double h = 1.0 / std::sqrt(2.0);
    const std::array<Complex, 4> phi = {0.0, h, h, 0.0};
    const auto bell = ComplexMatrix::outer(phi);
    const auto half = 0.5 * ComplexMatrix::identity(2);
    CHECK(max_abs_diff(partial_trace_qubits(bell, 2, {0}), half) < 1e-15);
    CHECK(max_abs_diff(partial_trace_qubits(bell, 2, {1}), half) < 1e-15);
}

TEST_CASE("partial_trace_qubits follows the order of the keep list") {
    std::mt19937_64 rng(9);
    const auto a = testing::random_density(rng, 2);
    const auto b = testing::random_density(rng, 2);
    const auto c = testing::random_density(rng, 2);
    const auto abc = kron(a, kron(b, c));
    CHECK(max_abs_diff(partial_trace_qubits(abc, 3, {2, 0}), kron(c, a)) < 1e-14);
    CHECK(max_abs_diff(partial_trace_qubits(abc, 3, {0, 2}), kron(a, c)) < 1e-14);
}

TEST_CASE("partial_trace_qubits preserves the trace") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = testing::random_matrix(rng, 16);
        CHECK(std::abs(partial_trace_qubits(m, 4, {3, 1}).trace() - m.trace()) < 1e-12);
    }
}

TEST_CASE("partial_trace_qubits input errors") {
    CHECK_THROWS_AS(partial_trace_qubits(ComplexMatrix::identity(3), 2, {0}), PreconditionError);
    CHECK_THROWS_AS(partial_trace_qubits(ComplexMatrix::identity(4), 2, {0, 0}), PreconditionError);
    CHECK_THROWS_AS(partial_trace_qubits(ComplexMatrix::identity(4), 2, {2}), PreconditionError);
}
