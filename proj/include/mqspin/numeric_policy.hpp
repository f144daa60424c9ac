#pragma once

namespace mqspin {

/// Tolerances used throughout the library. One record, passed by const reference.
struct NumericPolicy {
  /// Hermiticity check on inputs to eigendecomposition and evolution.
  double hermitian_tol = 1e-10;
  /// Default for equality checks between two routes to the same quantity.
  double equality_tol = 1e-10;
  /// Exact-structure checks (parity mixing, block layout).
  double structure_tol = 1e-12;
  /// Pure-state normalisation.
  double norm_tol = 1e-12;
  /// Squared measures below this count as zero when classifying states.
  double classification_tol = 1e-8;
  /// Most negative eigenvalue accepted for a density matrix.
  double positivity_tol = 1e-8;
  /// Largest imaginary part accepted for eigenvalues of the spin-flip product.
  double eigen_imag_tol = 1e-8;
  /// Largest trace deviation accepted for a unit-trace density matrix.
  double trace_tol = 1e-10;
  /// Dense storage grows as 4^N; systems above this cap are rejected.
  int spin_cap = 12;
};

}  // namespace mqspin
