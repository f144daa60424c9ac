#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mqspin/spin_model.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace mqspin;
using Catch::Approx;

TEST_CASE("basis convention", "[spin-model]") {
  CHECK(magnetization(0b00, 2) == 1.0);
  CHECK(magnetization(0b11, 2) == -1.0);
  CHECK(magnetization(0b011, 3) == -0.5);
  CHECK(spin_bit(0, 3) == 0b100);
  CHECK(spin_bit(2, 3) == 0b001);
  CHECK(coherence_order(0b00, 0b11) == 2);
  CHECK(coherence_order(0b11, 0b00) == -2);
  for (BasisIndex i = 0; i < 64; ++i) {
    CHECK(magnetization(i, 6) == (6 - 2 * std::popcount(i)) / 2.0);
    CHECK(magnetization(i, 6) == oracle::magnetization(i, 6));
  }
}

TEST_CASE("dipolar_constant", "[spin-model]") {
  const double magic = std::acos(1.0 / std::sqrt(3.0));
  CHECK(std::abs(dipolar_constant(2e-10, magic)) < 1e-12 * std::abs(dipolar_constant(2e-10, 0.0)));
  CHECK(std::abs(dipolar_constant(5e-10, magic, 1.0e8)) < 1e-12 * std::abs(dipolar_constant(5e-10, 0.0, 1.0e8)));

  const double gamma = 2.675e8, hbar = 1.054571817e-34, r = 3.0e-10;
  CHECK(dipolar_constant(r, std::numbers::pi / 2, gamma, hbar) == Approx(gamma * gamma * hbar / (2 * r * r * r)));
  // gamma^2 hbar (1 - 3) / (2 r^3), evaluated separately.
  CHECK(dipolar_constant(r, 0.0, gamma, hbar) == Approx(-279485942889.6528).epsilon(1e-12));

  CHECK_THROWS_AS(dipolar_constant(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(dipolar_constant(-1e-10, 0.0), DomainError);
}

TEST_CASE("SpinSystem validation and coupling lookup", "[spin-model]") {
  const SpinSystem s(4, {1, 2, 3, 4, 5, 6});
  CHECK(s.coupling(0, 1) == 1);
  CHECK(s.coupling(0, 3) == 3);
  CHECK(s.coupling(1, 2) == 4);
  CHECK(s.coupling(3, 2) == 6);
  CHECK(s.dimension() == 16);
  CHECK_THROWS_AS(s.coupling(1, 1), IndexError);
  CHECK_THROWS_AS(s.coupling(0, 4), IndexError);

  CHECK_THROWS_AS(SpinSystem(3, {1, 2}), DimensionError);
  CHECK_THROWS_AS(SpinSystem(1, {}), DomainError);
  CHECK_THROWS_AS(SpinSystem(2, {std::nan("")}), DomainError);
  CHECK_THROWS_AS(SpinSystem(13, std::vector<double>(78, 1.0)), DomainError);

  const SpinSystem chain = SpinSystem::chain(4, 8.0);
  CHECK(chain.coupling(0, 1) == 8.0);
  CHECK(chain.coupling(0, 2) == 1.0);
  CHECK(chain.coupling(1, 3) == 1.0);
  CHECK(SpinSystem::ring3(2.0).uniform());
  CHECK_FALSE(SpinSystem::three(1, 2, 3).uniform());

  const SpinSystem geo = SpinSystem::chain_from_geometry(3, 3e-10);
  CHECK(geo.coupling(0, 1) < 0.0);
  CHECK(geo.coupling(0, 2) == Approx(geo.coupling(0, 1) / 8.0));
}

TEST_CASE("build_hamiltonian two spins", "[spin-model]") {
  const double d = 7.5;
  const ComplexMatrix h = build_hamiltonian(SpinSystem::pair(d));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  // I+I+ |11> = |00>, I-I- |00> = |11>, each scaled by -d/2.
  expected(0, 3) = -d / 2;
  expected(3, 0) = -d / 2;
  CHECK(max_abs_diff(h, expected) == 0.0);
  CHECK(max_abs_diff(build_hamiltonian(SpinSystem::pair(0.0)), ComplexMatrix::Zero(4, 4)) == 0.0);
}

TEST_CASE("build_hamiltonian matches tensor-product construction", "[spin-model][property]") {
  gen::Rng rng(21);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto c = rng.couplings(n);
      const ComplexMatrix h = build_hamiltonian(SpinSystem(n, c));
      CHECK(max_abs_diff(h, oracle::mq_hamiltonian(n, c)) < 1e-9);
      CHECK(is_hermitian(h, 0.0));
      CHECK(std::abs(h.trace()) == 0.0);
      for (Eigen::Index p = 0; p < h.rows(); ++p) {
        CHECK(h(p, p) == Complex(0.0));
        for (Eigen::Index q = 0; q < h.cols(); ++q) {
          if (h(p, q) != Complex(0.0)) {
            CHECK(std::abs(magnetization(p, n) - magnetization(q, n)) == 2.0);
          }
        }
      }
    }
  }
}

TEST_CASE("parity operator commutes with H", "[spin-model][property]") {
  gen::Rng rng(22);
  for (int n = 2; n <= 6; ++n) {
    const ComplexMatrix h = build_hamiltonian(SpinSystem(n, rng.couplings(n)));
    const ComplexMatrix p = parity_operator(n);
    CHECK((h * p - p * h).cwiseAbs().maxCoeff() == 0.0);
  }
  // Equal couplings, three spins: no matrix element between parities.
  const ComplexMatrix h3 = build_hamiltonian(SpinSystem::ring3(1.0));
  for (Eigen::Index p = 0; p < 8; ++p)
    for (Eigen::Index q = 0; q < 8; ++q)
      if ((std::popcount(static_cast<unsigned>(p)) + std::popcount(static_cast<unsigned>(q))) % 2) {
        CHECK(h3(p, q) == Complex(0.0));
      }
}

TEST_CASE("parity_blocks", "[spin-model]") {
  SECTION("three spins") {
    const ComplexMatrix h = build_hamiltonian(SpinSystem::three(1.0, 2.0, 3.0));
    const auto b = parity_blocks(h, 3);
    CHECK(b.even_basis == std::vector<BasisIndex>{0b000, 0b011, 0b101, 0b110});
    CHECK(b.odd_basis == std::vector<BasisIndex>{0b001, 0b010, 0b100, 0b111});
    CHECK(b.even.rows() == 4);
    CHECK(max_abs_diff(b.assemble(), h) == 0.0);
  }
  SECTION("two spins: odd block is zero") {
    const auto b = parity_blocks(build_hamiltonian(SpinSystem::pair(3.0)), 2);
    CHECK(b.even_basis == std::vector<BasisIndex>{0b00, 0b11});
    CHECK(b.odd_basis == std::vector<BasisIndex>{0b01, 0b10});
    CHECK(b.odd.cwiseAbs().maxCoeff() == 0.0);
    CHECK(b.even(0, 1) == Complex(-1.5));
  }
  SECTION("zero Hamiltonian") {
    const auto b = parity_blocks(ComplexMatrix::Zero(8, 8), 3);
    CHECK(b.even.cwiseAbs().maxCoeff() == 0.0);
    CHECK(b.odd.cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("mixed parity is rejected") {
    ComplexMatrix h = ComplexMatrix::Zero(4, 4);
    h(0, 1) = h(1, 0) = 1e-9;
    CHECK_THROWS_AS(parity_blocks(h, 2), StructureError);
    CHECK_THROWS_AS(parity_blocks(ComplexMatrix::Zero(4, 4), 3), DimensionError);
  }
}

TEST_CASE("parity blocks preserve the spectrum", "[spin-model][property]") {
  gen::Rng rng(23);
  for (int n = 2; n <= 6; ++n) {
    const ComplexMatrix h = build_hamiltonian(SpinSystem(n, rng.couplings(n)));
    const auto b = parity_blocks(h, n);
    const RealVector full = hermitian_eigendecompose(h).values;
    const RealVector even = hermitian_eigendecompose(b.even).values;
    const RealVector odd = hermitian_eigendecompose(b.odd).values;
    std::vector<double> joined(even.begin(), even.end());
    joined.insert(joined.end(), odd.begin(), odd.end());
    std::sort(joined.begin(), joined.end());
    REQUIRE(joined.size() == static_cast<std::size_t>(full.size()));
    for (std::size_t i = 0; i < joined.size(); ++i) CHECK(std::abs(joined[i] - full(i)) < 1e-9);
  }
}
