#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "mqspin/linalg.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace mqspin;
using Catch::Approx;

namespace {

ComplexMatrix diag(std::initializer_list<double> values) {
  ComplexMatrix m = ComplexMatrix::Zero(values.size(), values.size());
  Eigen::Index i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

ComplexMatrix reconstruct(const HermitianEigen& e) {
  return e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

}  // namespace

TEST_CASE("hermitian_eigendecompose on standard inputs", "[linalg]") {
  SECTION("identity") {
    const auto e = hermitian_eigendecompose(ComplexMatrix::Identity(2, 2));
    CHECK(e.values(0) == Approx(1.0));
    CHECK(e.values(1) == Approx(1.0));
    CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, ComplexMatrix::Identity(2, 2)) < 1e-12);
  }
  SECTION("diagonal input is sorted ascending") {
    const auto e = hermitian_eigendecompose(diag({1, 0, 0, -1}));
    REQUIRE(e.values.size() == 4);
    CHECK(e.values(0) == Approx(-1.0));
    CHECK(std::abs(e.values(1)) < 1e-15);
    CHECK(std::abs(e.values(2)) < 1e-15);
    CHECK(e.values(3) == Approx(1.0));
  }
  SECTION("pauli x") {
    const auto e = hermitian_eigendecompose(pauli::x());
    CHECK(e.values(0) == Approx(-1.0));
    CHECK(e.values(1) == Approx(1.0));
  }
}

TEST_CASE("hermitian_eigendecompose errors", "[linalg]") {
  CHECK_THROWS_AS(hermitian_eigendecompose(ComplexMatrix::Zero(2, 3)), DimensionError);
  ComplexMatrix m = pauli::x();
  m(0, 1) = 1.0 + 1e-6;
  CHECK_THROWS_AS(hermitian_eigendecompose(m), SymmetryError);
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices", "[linalg][property]") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index dim = Eigen::Index{1} << rng.integer(1, 4);
    const ComplexMatrix m = rng.hermitian(dim);
    const auto e = hermitian_eigendecompose(m);
    CHECK(max_abs_diff(reconstruct(e), m) < 1e-10);
    CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, ComplexMatrix::Identity(dim, dim)) < 1e-10);
    for (Eigen::Index i = 1; i < dim; ++i) CHECK(e.values(i) >= e.values(i - 1));
  }
}

TEST_CASE("propagator is unitary over [0, 10/|M|]", "[linalg][property]") {
  gen::Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index dim = Eigen::Index{1} << rng.integer(1, 4);
    const ComplexMatrix m = rng.hermitian(dim);
    const auto e = hermitian_eigendecompose(m);
    const double scale = 10.0 / m.norm();
    for (int k = 0; k <= 10; ++k) {
      const double t = scale * k / 10.0;
      const ComplexMatrix u = unitary_propagator(e, t);
      CHECK(max_abs_diff(u * u.adjoint(), ComplexMatrix::Identity(dim, dim)) < 1e-10);
      CHECK(max_abs_diff(u, (Complex(0.0, -t) * m).exp()) < 1e-10);
    }
  }
}

TEST_CASE("PSD matrices have eigenvalues above -1e-10", "[linalg][property]") {
  gen::Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix rho = rng.density(8, rng.integer(1, 8));
    CHECK(hermitian_eigendecompose(rho).values.minCoeff() >= -1e-10);
  }
}

TEST_CASE("kron", "[linalg]") {
  CHECK(max_abs_diff(kron(pauli::identity(), pauli::identity()), ComplexMatrix::Identity(4, 4)) == 0.0);

  const ComplexMatrix yy = kron(pauli::y(), pauli::y());
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 3) = -1.0;
  expected(1, 2) = 1.0;
  expected(2, 1) = 1.0;
  expected(3, 0) = -1.0;
  CHECK(max_abs_diff(yy, expected) == 0.0);

  const ComplexMatrix big = kron(ComplexMatrix::Ones(2, 2), ComplexMatrix::Ones(3, 3));
  CHECK(big.rows() == 6);
  CHECK(big.cols() == 6);

  gen::Rng rng(14);
  const ComplexMatrix a = rng.hermitian(2), b = rng.hermitian(4);
  CHECK(max_abs_diff(kron(a, b), oracle::kron(a, b)) == 0.0);
}

TEST_CASE("partial_trace examples", "[linalg]") {
  SECTION("product state |00><00|") {
    ComplexMatrix p = ComplexMatrix::Zero(4, 4);
    p(0, 0) = 1.0;
    const ComplexMatrix a = partial_trace(p, 2, {0});
    CHECK(max_abs_diff(a, diag({1, 0})) == 0.0);
  }
  SECTION("Bell projector marginal is maximally mixed") {
    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const ComplexMatrix rho = bell * bell.adjoint();
    CHECK(max_abs_diff(partial_trace(rho, 2, {0}), diag({0.5, 0.5})) < 1e-15);
    CHECK(max_abs_diff(partial_trace(rho, 2, {1}), diag({0.5, 0.5})) < 1e-15);
  }
  SECTION("empty keep gives the trace") {
    gen::Rng rng(15);
    const ComplexMatrix m = rng.hermitian(8);
    const ComplexMatrix t = partial_trace(m, 3, std::span<const int>{});
    REQUIRE(t.rows() == 1);
    CHECK(std::abs(t(0, 0) - m.trace()) < 1e-12);
  }
  SECTION("keeping spin 2 of a three-spin state selects the least significant bit") {
    ComplexMatrix p = ComplexMatrix::Zero(8, 8);
    p(0b001, 0b001) = 1.0;
    CHECK(max_abs_diff(partial_trace(p, 3, {2}), diag({0, 1})) == 0.0);
    CHECK(max_abs_diff(partial_trace(p, 3, {0}), diag({1, 0})) == 0.0);
  }
}

TEST_CASE("partial_trace errors", "[linalg]") {
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(3, 3), 2, {0}), DimensionError);
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(4, 4), 3, {0}), DimensionError);
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(4, 4), 2, {2}), IndexError);
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(4, 4), 2, {-1}), IndexError);
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(4, 4), 2, {0, 0}), IndexError);
}

TEST_CASE("partial_trace is linear, trace preserving and composes", "[linalg][property]") {
  gen::Rng rng(16);
  for (int trial = 0; trial < 25; ++trial) {
    const ComplexMatrix a = rng.hermitian(8), b = rng.hermitian(8);
    const Complex alpha = rng.complex_normal();
    for (int j = 0; j < 3; ++j) {
      for (int k = j + 1; k < 3; ++k) {
        const ComplexMatrix ab = partial_trace(a + alpha * b, 3, {j, k});
        CHECK(max_abs_diff(ab, partial_trace(a, 3, {j, k}) + alpha * partial_trace(b, 3, {j, k})) < 1e-12);
        CHECK(std::abs(ab.trace() - (a + alpha * b).trace()) < 1e-12);
        CHECK(max_abs_diff(partial_trace(a, 3, {j, k}), oracle::reduce_to_pair(a, j, k)) < 1e-12);
      }
    }
    // Trace out spin 1, then (on the 2-spin result, spin index 1 is the original spin 2) trace spin 2.
    const ComplexMatrix step = partial_trace(partial_trace(a, 3, {0, 2}), 2, {0});
    CHECK(max_abs_diff(step, partial_trace(a, 3, {0})) < 1e-12);
  }
}
