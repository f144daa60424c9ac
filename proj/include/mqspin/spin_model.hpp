#pragma once

// Dipolar-coupled spin-1/2 systems and the two-spin-flip MQ Hamiltonian
//
//   H = -1/2 * sum_{j<k} D_jk (I+_j I+_k + I-_j I-_k)
//
// Basis convention: spin 0 is the most significant bit of a basis index;
// bit value 0 is spin up (I_z = +1/2), bit value 1 is spin down.

#include <bit>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "numeric_policy.hpp"

namespace mqspin {

namespace constants {
inline constexpr double kHbar = 1.054571817e-34;    // J s
inline constexpr double kProtonGamma = 2.6752218744e8;  // rad / (s T)
/// Coupling used for the pair and ring presets: 2 pi * 2950 rad/s.
inline constexpr double kPresetCoupling = 2.0 * std::numbers::pi * 2950.0;
}  // namespace constants

using BasisIndex = std::uint64_t;

inline int popcount(BasisIndex index) { return std::popcount(index); }

/// Total I_z of a basis state, (N - 2 * popcount) / 2.
inline double magnetization(BasisIndex index, int n_spins) {
  return 0.5 * static_cast<double>(n_spins - 2 * popcount(index));
}

/// Coherence order connecting row state p to column state q: m(p) - m(q).
inline int coherence_order(BasisIndex row, BasisIndex col) {
  return popcount(col) - popcount(row);
}

inline BasisIndex spin_bit(int spin, int n_spins) {
  return BasisIndex{1} << (n_spins - 1 - spin);
}

/// D = gamma^2 hbar (1 - 3 cos^2 theta) / (2 r^3), in rad/s.
inline double dipolar_constant(double r, double theta, double gamma = constants::kProtonGamma,
                               double hbar = constants::kHbar) {
  if (!(r > 0.0)) throw DomainError("dipolar_constant: distance must be positive");
  const double c = std::cos(theta);
  return gamma * gamma * hbar * (1.0 - 3.0 * c * c) / (2.0 * r * r * r);
}

class SpinSystem {
 public:
  /// `couplings` lists D_jk for j<k in lexicographic order: (0,1), (0,2), ..., (1,2), ...
  SpinSystem(int n_spins, std::vector<double> couplings, const NumericPolicy& policy = {})
      : n_spins_(n_spins), couplings_(std::move(couplings)) {
    if (n_spins_ < 2) throw DomainError("SpinSystem: need at least two spins");
    if (n_spins_ > policy.spin_cap) {
      throw DomainError("SpinSystem: " + std::to_string(n_spins_) + " spins exceeds cap " +
                        std::to_string(policy.spin_cap));
    }
    if (n_spins_ > 12) {
      std::cerr << "warning: " << n_spins_ << " spins needs a dense " << (1ull << n_spins_)
                << "-dimensional Hamiltonian\n";
    }
    const std::size_t expected = static_cast<std::size_t>(n_spins_ * (n_spins_ - 1) / 2);
    if (couplings_.size() != expected) {
      throw DimensionError("SpinSystem: expected " + std::to_string(expected) + " couplings, got " +
                           std::to_string(couplings_.size()));
    }
    for (double d : couplings_) {
      if (!std::isfinite(d)) throw DomainError("SpinSystem: non-finite coupling");
    }
  }

  static SpinSystem pair(double d12) { return SpinSystem(2, {d12}); }

  /// Three spins, couplings D12, D13, D23 (spins numbered from 1 as in the usual notation).
  static SpinSystem three(double d12, double d13, double d23) {
    return SpinSystem(3, {d12, d13, d23});
  }

  /// Equilateral triangle: all three couplings equal.
  static SpinSystem ring3(double d) { return three(d, d, d); }

  /// Linear chain with theta = 0 geometry: D_jk = nearest / |j-k|^3.
  static SpinSystem chain(int n_spins, double nearest, const NumericPolicy& policy = {}) {
    std::vector<double> c;
    for (int j = 0; j < n_spins; ++j) {
      for (int k = j + 1; k < n_spins; ++k) c.push_back(nearest / std::pow(double(k - j), 3));
    }
    return SpinSystem(n_spins, std::move(c), policy);
  }

  /// Linear chain along the field with uniform spacing; couplings from dipolar_constant at theta = 0.
  static SpinSystem chain_from_geometry(int n_spins, double spacing,
                                        double gamma = constants::kProtonGamma,
                                        const NumericPolicy& policy = {}) {
    std::vector<double> c;
    for (int j = 0; j < n_spins; ++j) {
      for (int k = j + 1; k < n_spins; ++k) c.push_back(dipolar_constant((k - j) * spacing, 0.0, gamma));
    }
    return SpinSystem(n_spins, std::move(c), policy);
  }

  int n_spins() const { return n_spins_; }
  Eigen::Index dimension() const { return Eigen::Index{1} << n_spins_; }
  const std::vector<double>& couplings() const { return couplings_; }

  /// D_jk for j != k, zero-based spin indices.
  double coupling(int j, int k) const {
    if (j == k || j < 0 || k < 0 || j >= n_spins_ || k >= n_spins_) {
      throw IndexError("SpinSystem::coupling: invalid pair (" + std::to_string(j) + "," +
                       std::to_string(k) + ")");
    }
    if (j > k) std::swap(j, k);
    // Offset of row j in the packed upper triangle.
    const int offset = j * n_spins_ - j * (j + 1) / 2;
    return couplings_[static_cast<std::size_t>(offset + (k - j - 1))];
  }

  /// True if all couplings are equal to within a relative tolerance.
  bool uniform(double rel_tol = 1e-12) const {
    for (double d : couplings_) {
      if (std::abs(d - couplings_.front()) > rel_tol * std::max(1.0, std::abs(couplings_.front()))) {
        return false;
      }
    }
    return true;
  }

 private:
  int n_spins_;
  std::vector<double> couplings_;
};

/// H = -1/2 sum_{j<k} D_jk (I+_j I+_k + I-_j I-_k) as a real symmetric matrix.
inline ComplexMatrix build_hamiltonian(const SpinSystem& sys) {
  const int n = sys.n_spins();
  const Eigen::Index dim = sys.dimension();
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double d = sys.coupling(j, k);
      if (d == 0.0) continue;
      const BasisIndex both = spin_bit(j, n) | spin_bit(k, n);
      for (BasisIndex q = 0; q < static_cast<BasisIndex>(dim); ++q) {
        // I+_j I+_k maps |..1..1..> to |..0..0..> with unit matrix element.
        if ((q & both) == both) {
          const BasisIndex p = q & ~both;
          h(p, q) += -0.5 * d;
          h(q, p) += -0.5 * d;
        }
      }
    }
  }
  return h;
}

/// Diagonal matrix exp(i pi * popcount): +1 on even, -1 on odd popcount states.
inline ComplexMatrix parity_operator(int n_spins) {
  const Eigen::Index dim = Eigen::Index{1} << n_spins;
  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) p(i, i) = (popcount(i) % 2 == 0) ? 1.0 : -1.0;
  return p;
}

struct ParityBlocks {
  ComplexMatrix even;
  ComplexMatrix odd;
  std::vector<BasisIndex> even_basis;  // ascending basis indices with even popcount
  std::vector<BasisIndex> odd_basis;

  /// Full matrix rebuilt from the two blocks.
  ComplexMatrix assemble() const {
    const Eigen::Index dim = static_cast<Eigen::Index>(even_basis.size() + odd_basis.size());
    ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
    for (std::size_t r = 0; r < even_basis.size(); ++r)
      for (std::size_t c = 0; c < even_basis.size(); ++c) full(even_basis[r], even_basis[c]) = even(r, c);
    for (std::size_t r = 0; r < odd_basis.size(); ++r)
      for (std::size_t c = 0; c < odd_basis.size(); ++c) full(odd_basis[r], odd_basis[c]) = odd(r, c);
    return full;
  }
};

inline std::vector<BasisIndex> parity_basis(int n_spins, int parity) {
  std::vector<BasisIndex> basis;
  const BasisIndex dim = BasisIndex{1} << n_spins;
  for (BasisIndex i = 0; i < dim; ++i) {
    if (popcount(i) % 2 == parity) basis.push_back(i);
  }
  return basis;
}

inline ComplexMatrix extract_block(const ComplexMatrix& m, const std::vector<BasisIndex>& basis) {
  const Eigen::Index k = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix b(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) b(r, c) = m(basis[r], basis[c]);
  return b;
}

/// Splits a parity-conserving matrix into its even- and odd-popcount blocks.
inline ParityBlocks parity_blocks(const ComplexMatrix& h, int n_spins, const NumericPolicy& policy = {}) {
  if (h.rows() != h.cols() || spin_count_for_dimension(h.rows()) != n_spins) {
    throw DimensionError("parity_blocks: matrix does not match " + std::to_string(n_spins) + " spins");
  }
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    for (Eigen::Index c = 0; c < h.cols(); ++c) {
      if ((popcount(r) + popcount(c)) % 2 != 0 && std::abs(h(r, c)) > policy.structure_tol) {
        throw StructureError("parity_blocks: entry (" + std::to_string(r) + "," + std::to_string(c) +
                             ") mixes parities");
      }
    }
  }
  ParityBlocks out;
  out.even_basis = parity_basis(n_spins, 0);
  out.odd_basis = parity_basis(n_spins, 1);
  out.even = extract_block(h, out.even_basis);
  out.odd = extract_block(h, out.odd_basis);
  return out;
}

}  // namespace mqspin
