#pragma once

// MQ dynamics: evolution of the high-temperature initial state under the
// two-spin-flip Hamiltonian and its decomposition into coherence orders.

#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "numeric_policy.hpp"
#include "spin_model.hpp"

namespace mqspin {

/// Hermitian 2^N x 2^N matrix. Not required to be positive: the MQ initial
/// state sum_j I_zj is traceless.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, int n_spins, const NumericPolicy& policy = {})
      : matrix_(std::move(matrix)), n_spins_(n_spins) {
    if (matrix_.rows() != matrix_.cols() || spin_count_for_dimension(matrix_.rows()) != n_spins_) {
      throw DimensionError("DensityMatrix: shape does not match " + std::to_string(n_spins_) + " spins");
    }
    const double defect = hermiticity_defect(matrix_);
    if (defect > policy.hermitian_tol) {
      throw SymmetryError("DensityMatrix: Hermiticity defect " + std::to_string(defect));
    }
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  int n_spins() const { return n_spins_; }
  Eigen::Index dimension() const { return matrix_.rows(); }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return matrix_(r, c); }

 private:
  ComplexMatrix matrix_;
  int n_spins_;
};

/// rho(0) = sum_j I_zj, diagonal with the magnetization of each basis state.
inline DensityMatrix initial_density(int n_spins) {
  if (n_spins < 1) throw DomainError("initial_density: need at least one spin");
  const Eigen::Index dim = Eigen::Index{1} << n_spins;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) m(i, i) = magnetization(static_cast<BasisIndex>(i), n_spins);
  return DensityMatrix(std::move(m), n_spins);
}

/// U rho U^dagger with U = exp(-i H tau) taken from a stored decomposition of H.
class Propagator {
 public:
  explicit Propagator(const ComplexMatrix& h, const NumericPolicy& policy = {})
      : eig_(hermitian_eigendecompose(h, policy)) {}

  Eigen::Index dimension() const { return eig_.values.size(); }
  const HermitianEigen& eigen() const { return eig_; }

  ComplexMatrix unitary(double tau) const { return unitary_propagator(eig_, tau); }

  ComplexMatrix evolve(const ComplexMatrix& rho0, double tau) const {
    if (rho0.rows() != dimension() || rho0.cols() != dimension()) {
      throw DimensionError("Propagator::evolve: density and Hamiltonian dimensions differ");
    }
    if (tau == 0.0) return rho0;
    // Work in the eigenbasis: rho'_ab = exp(-i (l_a - l_b) tau) rho_ab.
    ComplexMatrix in_eig = eig_.vectors.adjoint() * rho0 * eig_.vectors;
    const Eigen::Index n = dimension();
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) {
        in_eig(a, b) *= std::exp(-kI * ((eig_.values(a) - eig_.values(b)) * tau));
      }
    }
    ComplexMatrix out = eig_.vectors * in_eig * eig_.vectors.adjoint();
    // Restore exact Hermiticity lost to rounding.
    return 0.5 * (out + out.adjoint());
  }

 private:
  HermitianEigen eig_;
};

/// rho(tau) = exp(-i H tau) rho(0) exp(i H tau).
inline DensityMatrix evolve(const ComplexMatrix& h, const DensityMatrix& rho0, double tau,
                            const NumericPolicy& policy = {}) {
  if (h.rows() != rho0.dimension() || h.cols() != rho0.dimension()) {
    throw DimensionError("evolve: Hamiltonian is " + std::to_string(h.rows()) + "x" +
                         std::to_string(h.cols()) + ", density is " + std::to_string(rho0.dimension()));
  }
  if (tau == 0.0) return rho0;
  return DensityMatrix(Propagator(h, policy).evolve(rho0.matrix(), tau), rho0.n_spins(), policy);
}

/// rho = sum_n rho_n, where rho_n keeps the entries of coherence order n.
inline std::map<int, ComplexMatrix> coherence_decompose(const DensityMatrix& rho) {
  std::map<int, ComplexMatrix> parts;
  const ComplexMatrix& m = rho.matrix();
  const Eigen::Index dim = m.rows();
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      if (m(r, c) == Complex(0.0)) continue;
      const int n = coherence_order(static_cast<BasisIndex>(r), static_cast<BasisIndex>(c));
      auto [it, inserted] = parts.try_emplace(n);
      if (inserted) it->second = ComplexMatrix::Zero(dim, dim);
      it->second(r, c) = m(r, c);
    }
  }
  if (parts.empty()) parts.emplace(0, ComplexMatrix::Zero(dim, dim));
  return parts;
}

/// Normalised MQ intensities J_n, n = 0..N, with J_n = J_{+n} + J_{-n} for n > 0.
class CoherenceSpectrum {
 public:
  explicit CoherenceSpectrum(std::vector<double> folded) : folded_(std::move(folded)) {}

  int max_order() const { return static_cast<int>(folded_.size()) - 1; }

  double at(int n) const {
    n = std::abs(n);
    return n < static_cast<int>(folded_.size()) ? folded_[static_cast<std::size_t>(n)] : 0.0;
  }

  /// J_0 + sum_{n>0} J_n; equals 1 for MQ evolution.
  double total() const {
    double s = 0.0;
    for (double j : folded_) s += j;
    return s;
  }

  const std::vector<double>& values() const { return folded_; }

 private:
  std::vector<double> folded_;
};

/// Tr rho(0)^2 = N 2^(N-2) for the MQ initial state.
inline double mq_normalization(int n_spins) {
  return static_cast<double>(n_spins) * std::ldexp(1.0, n_spins - 2);
}

/// Accumulates |rho_pq|^2 into folded orders. Tr(rho_n rho_-n) is the squared
/// Frobenius norm of rho_n because rho_-n = rho_n^dagger.
inline void accumulate_orders(const ComplexMatrix& m, const std::vector<BasisIndex>& basis,
                              std::vector<double>& folded) {
  const Eigen::Index k = m.rows();
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      const int n = std::abs(coherence_order(basis[r], basis[c]));
      folded[static_cast<std::size_t>(n)] += std::norm(m(r, c));
    }
  }
}

/// J_n = Tr[rho_n(tau) rho_-n(tau)] / Tr[rho(0)^2].
inline CoherenceSpectrum intensities(const DensityMatrix& rho_tau, const DensityMatrix& rho0) {
  if (rho_tau.dimension() != rho0.dimension()) {
    throw DimensionError("intensities: density matrices differ in dimension");
  }
  const double norm = rho0.matrix().squaredNorm();
  if (!(norm > 0.0)) throw NormalizationError("intensities: Tr rho(0)^2 is zero");
  const int n = rho_tau.n_spins();
  std::vector<BasisIndex> basis(static_cast<std::size_t>(rho_tau.dimension()));
  for (std::size_t i = 0; i < basis.size(); ++i) basis[i] = i;
  std::vector<double> folded(static_cast<std::size_t>(n + 1), 0.0);
  accumulate_orders(rho_tau.matrix(), basis, folded);
  for (double& j : folded) j /= norm;
  return CoherenceSpectrum(std::move(folded));
}

struct OrderSplitEntry {
  int order;
  bool expect_real;     // n = 0 mod 4 -> real, n = 2 mod 4 -> imaginary
  double max_violation; // largest |Im| (real orders) or |Re| (imaginary orders); any entry for odd orders
  bool pass;
};

struct OrderSplitReport {
  std::vector<OrderSplitEntry> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
  double max_violation() const {
    double v = 0.0;
    for (const auto& e : entries) v = std::max(v, e.max_violation);
    return v;
  }
};

/// Checks that rho_n is real for n = 0 (mod 4) and imaginary for n = 2 (mod 4).
inline OrderSplitReport realpart_order_split_check(const DensityMatrix& rho, double tol = 1e-10) {
  OrderSplitReport report;
  for (const auto& [n, part] : coherence_decompose(rho)) {
    const int mod4 = ((n % 4) + 4) % 4;
    OrderSplitEntry e{n, mod4 == 0, 0.0, true};
    if (mod4 == 0) {
      e.max_violation = part.imag().cwiseAbs().maxCoeff();
    } else if (mod4 == 2) {
      e.max_violation = part.real().cwiseAbs().maxCoeff();
    } else {
      e.max_violation = part.cwiseAbs().maxCoeff();
    }
    e.pass = e.max_violation <= tol;
    report.entries.push_back(e);
  }
  return report;
}

/// MQ evolution of one spin system, decomposed once per parity block.
///
/// H and rho(0) are both block diagonal in popcount parity, so rho(tau) is too;
/// every observable is computed from the blocks.
class MqEvolution {
 public:
  explicit MqEvolution(const SpinSystem& sys, const NumericPolicy& policy = {})
      : n_spins_(sys.n_spins()),
        hamiltonian_(build_hamiltonian(sys)),
        blocks_(parity_blocks(hamiltonian_, n_spins_, policy)),
        even_(blocks_.even, policy),
        odd_(blocks_.odd, policy) {
    rho0_even_ = initial_block(blocks_.even_basis);
    rho0_odd_ = initial_block(blocks_.odd_basis);
  }

  int n_spins() const { return n_spins_; }
  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
  const ParityBlocks& blocks() const { return blocks_; }

  ComplexMatrix even_block_at(double tau) const { return even_.evolve(rho0_even_, tau); }
  ComplexMatrix odd_block_at(double tau) const { return odd_.evolve(rho0_odd_, tau); }

  DensityMatrix density_at(double tau) const {
    ParityBlocks b{even_block_at(tau), odd_block_at(tau), blocks_.even_basis, blocks_.odd_basis};
    return DensityMatrix(b.assemble(), n_spins_);
  }

  /// Spectrum from the blocks. For odd N the two blocks are related by a global
  /// spin flip, so only the even block is evolved and its intensities doubled.
  CoherenceSpectrum spectrum_at(double tau) const {
    std::vector<double> folded(static_cast<std::size_t>(n_spins_ + 1), 0.0);
    accumulate_orders(even_block_at(tau), blocks_.even_basis, folded);
    if (n_spins_ % 2 == 1) {
      for (double& j : folded) j *= 2.0;
    } else {
      accumulate_orders(odd_block_at(tau), blocks_.odd_basis, folded);
    }
    const double norm = mq_normalization(n_spins_);
    for (double& j : folded) j /= norm;
    return CoherenceSpectrum(std::move(folded));
  }

  /// exp(-iH tau)|0...0>: the pure state whose projector carries the even-block dynamics,
  /// rho_even(tau) = 2 |psi><psi| + (rho_even(0) - 2 |0..0><0..0|).
  ComplexVector mq_state_at(double tau) const {
    const ComplexMatrix u = even_.unitary(tau);
    ComplexVector psi = ComplexVector::Zero(Eigen::Index{1} << n_spins_);
    for (std::size_t r = 0; r < blocks_.even_basis.size(); ++r) psi(blocks_.even_basis[r]) = u(r, 0);
    return psi;
  }

 private:
  ComplexMatrix initial_block(const std::vector<BasisIndex>& basis) const {
    const Eigen::Index k = static_cast<Eigen::Index>(basis.size());
    ComplexMatrix m = ComplexMatrix::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) m(i, i) = magnetization(basis[i], n_spins_);
    return m;
  }

  int n_spins_;
  ComplexMatrix hamiltonian_;
  ParityBlocks blocks_;
  Propagator even_;
  Propagator odd_;
  ComplexMatrix rho0_even_;
  ComplexMatrix rho0_odd_;
};

}  // namespace mqspin
