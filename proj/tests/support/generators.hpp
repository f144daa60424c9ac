#pragma once

// Seeded random inputs for property tests.

#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "mqspin/linalg.hpp"

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  mqspin::Complex complex_normal() {
    std::normal_distribution<double> g;
    return {g(engine_), g(engine_)};
  }

  double coupling() { return uniform(-2.0 * std::numbers::pi * 5000.0, 2.0 * std::numbers::pi * 5000.0); }
  double tau() { return uniform(0.0, 1e-3); }

  std::vector<double> couplings(int n) {
    std::vector<double> c(static_cast<std::size_t>(n * (n - 1) / 2));
    for (double& d : c) d = coupling();
    return c;
  }

  mqspin::ComplexMatrix hermitian(Eigen::Index dim) {
    mqspin::ComplexMatrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = complex_normal();
    return 0.5 * (a + a.adjoint());
  }

  mqspin::ComplexVector unit_vector(Eigen::Index dim) {
    mqspin::ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = complex_normal();
    return v.normalized();
  }

  /// Random density matrix of rank `rank`.
  mqspin::ComplexMatrix density(Eigen::Index dim, int rank) {
    mqspin::ComplexMatrix rho = mqspin::ComplexMatrix::Zero(dim, dim);
    for (int r = 0; r < rank; ++r) {
      const mqspin::ComplexVector v = unit_vector(dim);
      rho += uniform(0.1, 1.0) * v * v.adjoint();
    }
    return rho / rho.trace().real();
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gen
