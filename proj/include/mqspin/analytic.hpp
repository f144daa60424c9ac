#pragma once

// Closed-form MQ dynamics of two spins and of three spins.
//
// All closed forms take the rotation angle phi. Under rho(tau) =
// exp(-iH tau) rho(0) exp(iH tau) with H = -1/2 sum D (I+I+ + I-I-) the angle
// runs backwards in time, phi = -D tau; see pair_phase() and ring_phase().
// Observables (intensities, concurrences, tangles) are even in phi.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "numeric_policy.hpp"
#include "spin_model.hpp"

namespace mqspin {

/// Normalised state vector over the 2^N computational basis.
class PureState {
 public:
  PureState(ComplexVector amplitudes, int n_spins, const NumericPolicy& policy = {})
      : amplitudes_(std::move(amplitudes)), n_spins_(n_spins) {
    if (spin_count_for_dimension(amplitudes_.size()) != n_spins_) {
      throw DimensionError("PureState: " + std::to_string(amplitudes_.size()) +
                           " amplitudes do not match " + std::to_string(n_spins_) + " spins");
    }
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > policy.norm_tol) {
      throw NormalizationError("PureState: norm " + std::to_string(norm) + " is not 1");
    }
  }

  /// Rescales to unit norm; throws on the zero vector.
  static PureState normalized(ComplexVector amplitudes, int n_spins) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0)) throw NormalizationError("PureState: zero vector");
    return PureState(amplitudes / norm, n_spins);
  }

  const ComplexVector& amplitudes() const { return amplitudes_; }
  int n_spins() const { return n_spins_; }
  Complex amplitude(BasisIndex i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  ComplexVector amplitudes_;
  int n_spins_;
};

/// Rotation angle of the two-spin closed forms at time tau.
inline double pair_phase(double d12, double tau) { return -d12 * tau; }

/// Rotation angle of the equal-coupling three-spin closed forms at time tau.
inline double ring_phase(double d, double tau) { return -std::numbers::sqrt3 * d * tau; }

/// 4x4 two-spin density: cos(phi) on the |00>,|11> diagonal, +-i sin(phi) on the corners.
inline DensityMatrix two_spin_density(double phi) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = std::cos(phi);
  m(3, 3) = -std::cos(phi);
  m(0, 3) = kI * std::sin(phi);
  m(3, 0) = -kI * std::sin(phi);
  return DensityMatrix(std::move(m), 2);
}

/// e^{i pi/4} cos(phi/2) |00> + e^{-i pi/4} sin(phi/2) |11>.
inline PureState two_spin_state(double phi) {
  const Complex plus = std::polar(1.0, std::numbers::pi / 4);
  const Complex minus = std::polar(1.0, -std::numbers::pi / 4);
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = plus * std::cos(phi / 2);
  v(3) = minus * std::sin(phi / 2);
  return PureState(std::move(v), 2);
}

/// The time-independent offset E' = diag(1,0,0,1) with rho = 2|psi><psi| - E'.
inline ComplexMatrix two_spin_offset() {
  ComplexMatrix e = ComplexMatrix::Zero(4, 4);
  e(0, 0) = 1.0;
  e(3, 3) = 1.0;
  return e;
}

/// Even-parity block (basis |000>,|011>,|101>,|110>) of the three-spin MQ
/// density at time tau, for arbitrary couplings.
inline ComplexMatrix three_spin_density(double d12, double d13, double d23, double tau) {
  const double d_eff = std::sqrt(d12 * d12 + d13 * d13 + d23 * d23);
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.5;
  m(1, 1) = m(2, 2) = m(3, 3) = -0.5;
  if (d_eff == 0.0) return m;

  const double phi = -d_eff * tau;
  const double a = std::cos(phi) - 1.0;
  const double b = std::sin(phi);
  // Basis rows 1..3 are coupled to |000> through D23, D13, D12 respectively.
  const std::array<double, 3> r{d23 / d_eff, d13 / d_eff, d12 / d_eff};

  m(0, 0) += a;
  for (int i = 0; i < 3; ++i) {
    m(0, i + 1) = kI * r[i] * b;
    m(i + 1, 0) = -kI * r[i] * b;
    for (int j = 0; j < 3; ++j) m(i + 1, j + 1) -= r[i] * r[j] * a;
  }
  return m;
}

/// Odd-parity block (basis |001>,|010>,|100>,|111>). A global spin flip maps the
/// even block onto the odd one and negates rho(0), while leaving H unchanged.
inline ComplexMatrix three_spin_density_odd(double d12, double d13, double d23, double tau) {
  const ComplexMatrix even = three_spin_density(d12, d13, d23, tau);
  // Flip partner in the even basis (000, 011, 101, 110) of each odd basis state (001, 010, 100, 111).
  constexpr std::array<int, 4> partner{3, 2, 1, 0};
  ComplexMatrix odd(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) odd(r, c) = -even(partner[r], partner[c]);
  return odd;
}

/// Equal-coupling state: a = e^{i pi/4} cos(phi/2) on |000>, b = c = d =
/// e^{-i pi/4} sin(phi/2) / sqrt(3) on |011>, |101>, |110>.
inline PureState three_spin_ring_state(double phi) {
  const Complex a = std::polar(std::cos(phi / 2), std::numbers::pi / 4);
  const Complex b = std::polar(std::sin(phi / 2) / std::numbers::sqrt3, -std::numbers::pi / 4);
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = a;
  v(3) = v(5) = v(6) = b;
  return PureState(std::move(v), 3);
}

/// Even-block density of the ring at angle phi (equal couplings).
inline ComplexMatrix three_spin_ring_density(double phi) {
  // three_spin_density at D_eff * tau = -phi with unit couplings.
  return three_spin_density(1.0, 1.0, 1.0, -phi / std::numbers::sqrt3);
}

/// J_2 of the equal-coupling ring: (2/3) sin^2(phi).
inline double three_spin_ring_J2(double phi) {
  const double s = std::sin(phi);
  return 2.0 / 3.0 * s * s;
}

}  // namespace mqspin
