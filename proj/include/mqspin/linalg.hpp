#pragma once

// Dense complex linear algebra for small spin systems.
//
// Matrices are Eigen::MatrixXcd. Basis indices follow the library-wide
// convention: spin 0 is the most significant bit of the index.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "numeric_policy.hpp"

namespace mqspin {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest elementwise |M - M^dagger|.
inline double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shapes differ");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

/// Number of qubits n with 2^n == dim; throws if dim is not a power of two.
inline int spin_count_for_dimension(Eigen::Index dim) {
  if (dim < 1 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

struct HermitianEigen {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns
};

inline HermitianEigen hermitian_eigendecompose(const ComplexMatrix& m,
                                               const NumericPolicy& policy = {}) {
  if (m.rows() != m.cols()) {
    throw DimensionError("hermitian_eigendecompose: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  if (m.rows() == 0) throw DimensionError("hermitian_eigendecompose: empty matrix");
  const double defect = hermiticity_defect(m);
  if (defect > policy.hermitian_tol) {
    throw SymmetryError("hermitian_eigendecompose: Hermiticity defect " + std::to_string(defect));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericError("hermitian_eigendecompose: solver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// V f(diag) V^dagger for a scalar function applied to the eigenvalues.
template <typename F>
ComplexMatrix apply_spectral(const HermitianEigen& eig, F&& f) {
  const Eigen::Index n = eig.values.size();
  ComplexVector fv(n);
  for (Eigen::Index i = 0; i < n; ++i) fv(i) = Complex(f(eig.values(i)));
  return eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
}

/// exp(-i M t) from a precomputed decomposition of M.
inline ComplexMatrix unitary_propagator(const HermitianEigen& eig, double t) {
  return apply_spectral(eig, [t](double lambda) { return std::exp(-kI * (lambda * t)); });
}

/// exp(-i M t) for Hermitian M.
inline ComplexMatrix unitary_propagator(const ComplexMatrix& m, double t,
                                        const NumericPolicy& policy = {}) {
  return unitary_propagator(hermitian_eigendecompose(m, policy), t);
}

/// Principal square root of a positive-semidefinite matrix; negative rounding noise is clamped.
inline ComplexMatrix psd_sqrt(const HermitianEigen& eig) {
  return apply_spectral(eig, [](double lambda) { return std::sqrt(std::max(lambda, 0.0)); });
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Reduced matrix on the spins in `keep` (any order; output basis orders them ascending).
/// An empty `keep` returns the 1x1 trace.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, int n_spins, std::span<const int> keep) {
  if (m.rows() != m.cols()) throw DimensionError("partial_trace: matrix is not square");
  if (spin_count_for_dimension(m.rows()) != n_spins) {
    throw DimensionError("partial_trace: dimension " + std::to_string(m.rows()) + " does not match " +
                         std::to_string(n_spins) + " spins");
  }
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] < 0 || kept[i] >= n_spins) {
      throw IndexError("partial_trace: spin index " + std::to_string(kept[i]) + " out of range");
    }
    if (i > 0 && kept[i] == kept[i - 1]) {
      throw IndexError("partial_trace: spin index " + std::to_string(kept[i]) + " repeated");
    }
  }
  std::vector<int> traced;
  for (int s = 0; s < n_spins; ++s) {
    if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);
  }

  const auto bit_of = [n_spins](int spin) { return std::uint64_t{1} << (n_spins - 1 - spin); };
  // Scatter a sub-register value onto the full index using the given spin list (MSB first).
  const auto scatter = [&](std::uint64_t value, const std::vector<int>& spins) {
    std::uint64_t full = 0;
    const int k = static_cast<int>(spins.size());
    for (int i = 0; i < k; ++i) {
      if (value & (std::uint64_t{1} << (k - 1 - i))) full |= bit_of(spins[i]);
    }
    return full;
  };

  const std::uint64_t kept_dim = std::uint64_t{1} << kept.size();
  const std::uint64_t traced_dim = std::uint64_t{1} << traced.size();
  std::vector<std::uint64_t> kept_index(kept_dim), traced_index(traced_dim);
  for (std::uint64_t v = 0; v < kept_dim; ++v) kept_index[v] = scatter(v, kept);
  for (std::uint64_t v = 0; v < traced_dim; ++v) traced_index[v] = scatter(v, traced);

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (std::uint64_t r = 0; r < kept_dim; ++r) {
    for (std::uint64_t c = 0; c < kept_dim; ++c) {
      Complex acc = 0.0;
      for (std::uint64_t t : traced_index) acc += m(kept_index[r] | t, kept_index[c] | t);
      out(r, c) = acc;
    }
  }
  return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix& m, int n_spins, std::initializer_list<int> keep) {
  return partial_trace(m, n_spins, std::span<const int>(keep.begin(), keep.size()));
}

namespace pauli {

inline ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

inline ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

inline ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

}  // namespace mqspin
