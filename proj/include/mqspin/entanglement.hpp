#pragma once

// Entanglement measures for the two- and three-spin MQ states: von Neumann
// entropy, concurrence (magic basis and spin-flip forms), one-to-pair
// concurrence, three-tangle and GHZ/W classification.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "analytic.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "numeric_policy.hpp"
#include "spin_model.hpp"

namespace mqspin {

inline constexpr std::array<char, 3> kSpinLabels{'A', 'B', 'C'};

/// H(x) = -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0.
inline double binary_entropy(double x) {
  const auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  x = std::clamp(x, 0.0, 1.0);
  return term(x) + term(1.0 - x);
}

/// -Tr sigma log2 sigma, in bits.
inline double von_neumann_entropy(const ComplexMatrix& sigma, const NumericPolicy& policy = {}) {
  const HermitianEigen eig = hermitian_eigendecompose(sigma, policy);
  const double trace = sigma.trace().real();
  if (std::abs(trace - 1.0) > policy.trace_tol) {
    throw NormalizationError("von_neumann_entropy: trace " + std::to_string(trace) + " is not 1");
  }
  if (eig.values.minCoeff() < -policy.positivity_tol) {
    throw PositivityError("von_neumann_entropy: eigenvalue " + std::to_string(eig.values.minCoeff()));
  }
  double s = 0.0;
  for (double lambda : eig.values) {
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

/// Entropy of entanglement across the cut `side` | rest of a pure state.
/// Both reduced matrices are evaluated and must agree.
inline double bipartite_entanglement(const PureState& state, std::span<const int> side,
                                     const NumericPolicy& policy = {}) {
  const int n = state.n_spins();
  std::vector<int> a(side.begin(), side.end());
  std::vector<int> b;
  for (int s : a) {
    if (s < 0 || s >= n) throw IndexError("bipartite_entanglement: spin " + std::to_string(s) + " out of range");
  }
  for (int s = 0; s < n; ++s) {
    if (std::find(a.begin(), a.end(), s) == a.end()) b.push_back(s);
  }
  const ComplexMatrix rho = state.projector();
  const double ea = von_neumann_entropy(partial_trace(rho, n, a), policy);
  const double eb = von_neumann_entropy(partial_trace(rho, n, b), policy);
  if (std::abs(ea - eb) > policy.equality_tol) {
    throw ConsistencyError("bipartite_entanglement: sides disagree (" + std::to_string(ea) + " vs " +
                           std::to_string(eb) + ")");
  }
  return ea;
}

inline double bipartite_entanglement(const PureState& state, std::initializer_list<int> side,
                                     const NumericPolicy& policy = {}) {
  return bipartite_entanglement(state, std::span<const int>(side.begin(), side.size()), policy);
}

/// The magic basis as columns:
/// (|00>+|11>)/sqrt2, i(|00>-|11>)/sqrt2, i(|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2.
inline ComplexMatrix magic_basis() {
  const double r = 1.0 / std::numbers::sqrt2;
  ComplexMatrix e = ComplexMatrix::Zero(4, 4);
  e(0, 0) = r;       e(3, 0) = r;
  e(0, 1) = kI * r;  e(3, 1) = -kI * r;
  e(1, 2) = kI * r;  e(2, 2) = kI * r;
  e(1, 3) = r;       e(2, 3) = -r;
  return e;
}

/// C = |sum_i alpha_i^2| with alpha_i = <e_i|psi> in the magic basis.
inline double magic_basis_concurrence(const PureState& state) {
  if (state.n_spins() != 2) throw DimensionError("magic_basis_concurrence: needs a two-spin state");
  const ComplexVector alpha = magic_basis().adjoint() * state.amplitudes();
  Complex sum = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i) sum += alpha(i) * alpha(i);
  return std::min(std::abs(sum), 1.0);
}

/// Entanglement of formation from concurrence: H[(1 + sqrt(1 - C^2)) / 2].
inline double concurrence_to_entanglement(double c) {
  if (c < -1e-12 || c > 1.0 + 1e-12) {
    throw DomainError("concurrence_to_entanglement: concurrence " + std::to_string(c) + " outside [0,1]");
  }
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

/// sigma_y (x) sigma_y.
inline ComplexMatrix yy() { return kron(pauli::y(), pauli::y()); }

/// (sigma_y (x) sigma_y) conj(sigma) (sigma_y (x) sigma_y).
inline ComplexMatrix spin_flip(const ComplexMatrix& sigma) {
  if (sigma.rows() != 4 || sigma.cols() != 4) throw DimensionError("spin_flip: needs a 4x4 matrix");
  const ComplexMatrix y = yy();
  return y * sigma.conjugate() * y;
}

/// Square roots of the eigenvalues of sigma * spin_flip(sigma), descending.
///
/// For PSD sigma these are the singular values of sqrt(sigma) Y conj(sqrt(sigma)),
/// whose Gram matrix is the Hermitian sqrt(sigma) sigma~ sqrt(sigma). Taking
/// singular values keeps zero eigenvalues at rounding level instead of at
/// sqrt(rounding) after a square root.
inline std::array<double, 4> wootters_sqrt_lambdas(const ComplexMatrix& sigma,
                                                   const NumericPolicy& policy = {}) {
  if (sigma.rows() != 4 || sigma.cols() != 4) throw DimensionError("wootters: needs a 4x4 matrix");
  const HermitianEigen eig = hermitian_eigendecompose(sigma, policy);
  std::array<double, 4> out{};
  if (eig.values.minCoeff() >= -policy.hermitian_tol) {
    const ComplexMatrix root = psd_sqrt(eig);
    const ComplexMatrix m = root * yy() * root.conjugate();
    const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
    for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = sv(i);
  } else {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(sigma * spin_flip(sigma));
    for (int i = 0; i < 4; ++i) {
      const Complex lambda = solver.eigenvalues()(i);
      if (std::abs(lambda.imag()) > policy.eigen_imag_tol) {
        throw NumericError("wootters: eigenvalue with imaginary part " + std::to_string(lambda.imag()));
      }
      out[static_cast<std::size_t>(i)] = std::sqrt(std::max(lambda.real(), 0.0));
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Eigenvalues of sigma * spin_flip(sigma), clamped at zero, descending.
inline std::array<double, 4> wootters_lambdas(const ComplexMatrix& sigma, const NumericPolicy& policy = {}) {
  auto s = wootters_sqrt_lambdas(sigma, policy);
  for (double& v : s) v *= v;
  return s;
}

/// max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)).
inline double wootters_concurrence(const ComplexMatrix& sigma, const NumericPolicy& policy = {}) {
  const auto s = wootters_sqrt_lambdas(sigma, policy);
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

namespace detail {

inline void require_three_spins(const PureState& state, const char* what) {
  if (state.n_spins() != 3) throw DimensionError(std::string(what) + ": needs a three-spin state");
}

inline void require_spin(int spin, const char* what) {
  if (spin < 0 || spin > 2) throw IndexError(std::string(what) + ": spin label out of range");
}

}  // namespace detail

/// Reduced density of two spins (ascending order) of a three-spin pure state.
inline ComplexMatrix pair_density(const PureState& state, int j, int k) {
  detail::require_three_spins(state, "pair_density");
  detail::require_spin(j, "pair_density");
  detail::require_spin(k, "pair_density");
  if (j == k) throw IndexError("pair_density: spins must differ");
  return partial_trace(state.projector(), 3, {j, k});
}

/// Squared Wootters concurrence between spins j and k.
inline double pair_c2(const PureState& state, int j, int k, const NumericPolicy& policy = {}) {
  const double c = wootters_concurrence(pair_density(state, j, k), policy);
  return c * c;
}

/// Tr[sigma_XY sigma~_XY] + Tr[sigma_XZ sigma~_XZ] for focus spin X.
inline double one_to_pair_c2_trace_form(const PureState& state, int focus) {
  detail::require_three_spins(state, "one_to_pair_c2");
  detail::require_spin(focus, "one_to_pair_c2");
  double sum = 0.0;
  for (int other = 0; other < 3; ++other) {
    if (other == focus) continue;
    const ComplexMatrix sigma = pair_density(state, std::min(focus, other), std::max(focus, other));
    sum += (sigma * spin_flip(sigma)).trace().real();
  }
  return sum;
}

/// C^2_{X(YZ)} = 4 det sigma_X, cross-checked against the trace form.
inline double one_to_pair_c2(const PureState& state, int focus, const NumericPolicy& policy = {}) {
  detail::require_three_spins(state, "one_to_pair_c2");
  detail::require_spin(focus, "one_to_pair_c2");
  const ComplexMatrix s = partial_trace(state.projector(), 3, {focus});
  const double det = (s(0, 0) * s(1, 1)).real() - std::norm(s(0, 1));
  const double value = 4.0 * det;
  const double trace_form = one_to_pair_c2_trace_form(state, focus);
  if (std::abs(value - trace_form) > policy.equality_tol) {
    throw ConsistencyError("one_to_pair_c2: 4 det = " + std::to_string(value) + ", trace form = " +
                           std::to_string(trace_form));
  }
  return value;
}

/// C^2_{X(YZ)} - C^2_{XY} - C^2_{XZ} for each focus X = A, B, C.
inline std::array<double, 3> monogamy_residuals(const PureState& state, const NumericPolicy& policy = {}) {
  detail::require_three_spins(state, "monogamy_residuals");
  const std::array<double, 3> pairs{pair_c2(state, 1, 2, policy),   // BC
                                    pair_c2(state, 0, 2, policy),   // AC
                                    pair_c2(state, 0, 1, policy)};  // AB
  // pairs[x] is the pair not containing spin x.
  std::array<double, 3> out{};
  for (int x = 0; x < 3; ++x) {
    double r = one_to_pair_c2(state, x, policy);
    for (int y = 0; y < 3; ++y) {
      if (y != x) r -= pairs[static_cast<std::size_t>(y)];
    }
    out[static_cast<std::size_t>(x)] = r;
  }
  return out;
}

/// Three-tangle as the monogamy residual; all three foci must agree.
inline double three_tangle(const PureState& state, const NumericPolicy& policy = {}) {
  const auto r = monogamy_residuals(state, policy);
  const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
  if (*hi - *lo > policy.equality_tol) {
    throw ConsistencyError("three_tangle: residuals disagree by " + std::to_string(*hi - *lo));
  }
  return r[0];
}

/// Eigenvalues of sigma sigma~ for a pair, split by the pair's parity sector:
/// `even_sector` on span{|00>,|11>}, `odd_sector` on span{|01>,|10>}.
/// For the parity families the sigma of every pair is block diagonal in these sectors
/// and each sector contributes one eigenvalue, 4|a|^2|b|^2 and 4|c|^2|d|^2 for the BC pair.
struct SectorLambdas {
  double even_sector;
  double odd_sector;
};

inline SectorLambdas labeled_lambdas(const PureState& state, int j, int k, const NumericPolicy& policy = {}) {
  const ComplexMatrix sigma = pair_density(state, j, k);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if ((popcount(r) + popcount(c)) % 2 != 0 && std::abs(sigma(r, c)) > policy.structure_tol) {
        throw StructureError("labeled_lambdas: pair density mixes parity sectors");
      }
    }
  }
  const ComplexMatrix product = sigma * spin_flip(sigma);
  // Each 2x2 sector block has rank one; its nonzero eigenvalue is its trace.
  return {(product(0, 0) + product(3, 3)).real(), (product(1, 1) + product(2, 2)).real()};
}

/// lambda1 = 2 sqrt(lambda2) - 3 lambda2 for the b = c = d family; lambda2 in [0, 4/9].
inline double lambda_relation_check(double lambda2) {
  constexpr double kMax = 4.0 / 9.0;
  if (lambda2 < -1e-12 || lambda2 > kMax + 1e-12) {
    throw DomainError("lambda_relation_check: lambda2 " + std::to_string(lambda2) + " outside [0, 4/9]");
  }
  lambda2 = std::clamp(lambda2, 0.0, kMax);
  return 2.0 * std::sqrt(lambda2) - 3.0 * lambda2;
}

enum class Parity { Even, Odd };

/// a|000> + b|011> + c|101> + d|110> (even) or d|001> + c|010> + b|100> + a|111> (odd).
inline ComplexVector family_amplitudes(Complex a, Complex b, Complex c, Complex d, Parity parity) {
  ComplexVector v = ComplexVector::Zero(8);
  if (parity == Parity::Even) {
    v(0b000) = a; v(0b011) = b; v(0b101) = c; v(0b110) = d;
  } else {
    v(0b001) = d; v(0b010) = c; v(0b100) = b; v(0b111) = a;
  }
  return v;
}

inline PureState family_state(Complex a, Complex b, Complex c, Complex d, Parity parity,
                              const NumericPolicy& policy = {}) {
  return PureState(family_amplitudes(a, b, c, d, parity), 3, policy);
}

struct EntanglementReport {
  std::map<std::string, double> pair_c2;         // "AB", "AC", "BC"
  std::map<std::string, double> one_to_pair_c2;  // "A", "B", "C"  (X with the other two)
  double three_tangle = 0.0;
  std::map<std::string, double> entropies;       // "A|BC", "B|AC", "C|AB"
};

inline EntanglementReport entanglement_report(const PureState& state, const NumericPolicy& policy = {}) {
  detail::require_three_spins(state, "entanglement_report");
  EntanglementReport rep;
  for (int j = 0; j < 3; ++j) {
    for (int k = j + 1; k < 3; ++k) {
      rep.pair_c2[{kSpinLabels[j], kSpinLabels[k]}] = pair_c2(state, j, k, policy);
    }
  }
  for (int x = 0; x < 3; ++x) {
    rep.one_to_pair_c2[std::string(1, kSpinLabels[x])] = one_to_pair_c2(state, x, policy);
    std::string label(1, kSpinLabels[x]);
    label += '|';
    for (int y = 0; y < 3; ++y)
      if (y != x) label += kSpinLabels[y];
    rep.entropies[label] = bipartite_entanglement(state, {x}, policy);
  }
  rep.three_tangle = three_tangle(state, policy);
  return rep;
}

enum class StateClass { Separable, GhzLike, WLike, Generic };

inline std::string to_string(StateClass c) {
  switch (c) {
    case StateClass::Separable: return "separable";
    case StateClass::GhzLike: return "GHZ-like";
    case StateClass::WLike: return "W-like";
    case StateClass::Generic: return "generic";
  }
  return "unknown";
}

/// Which parity family the state's support lies in; throws if it lies in neither.
inline Parity family_parity(const PureState& state, const NumericPolicy& policy = {}) {
  detail::require_three_spins(state, "family_parity");
  double even = 0.0, odd = 0.0;
  for (BasisIndex i = 0; i < 8; ++i) (popcount(i) % 2 == 0 ? even : odd) += std::norm(state.amplitude(i));
  if (odd <= policy.structure_tol) return Parity::Even;
  if (even <= policy.structure_tol) return Parity::Odd;
  throw ClassificationError("classify_state: support spans both parity families");
}

inline StateClass classify(const EntanglementReport& rep, double tol) {
  const auto below = [tol](double v) { return v < tol; };
  bool pairs_zero = true, one_to_pair_zero = true;
  for (const auto& [_, v] : rep.pair_c2) pairs_zero = pairs_zero && below(v);
  for (const auto& [_, v] : rep.one_to_pair_c2) one_to_pair_zero = one_to_pair_zero && below(v);
  const bool tangle_zero = below(rep.three_tangle);
  if (pairs_zero && one_to_pair_zero && tangle_zero) return StateClass::Separable;
  if (pairs_zero && !tangle_zero) return StateClass::GhzLike;
  if (tangle_zero && !pairs_zero) return StateClass::WLike;
  return StateClass::Generic;
}

inline StateClass classify_state(const PureState& state, const NumericPolicy& policy = {}) {
  family_parity(state, policy);
  return classify(entanglement_report(state, policy), policy.classification_tol);
}

struct J2IdentityReport {
  double j2 = 0.0;
  /// C^2 for two spins, 2 lambda1 for the three-spin ring.
  double measure = 0.0;
  double error = 0.0;
  bool pass = false;
};

/// J2 against C^2 (two spins) or against 2 lambda1 (three-spin ring) at time tau.
inline J2IdentityReport j2_identity_check(const SpinSystem& sys, double tau, const NumericPolicy& policy = {}) {
  const bool pair = sys.n_spins() == 2;
  const bool ring = sys.n_spins() == 3 && sys.uniform();
  if (!pair && !ring) throw ScopeError("j2_identity_check: needs two spins or an equal-coupling three-spin ring");
  const MqEvolution evolution(sys, policy);
  J2IdentityReport rep;
  rep.j2 = evolution.spectrum_at(tau).at(2);
  const PureState state(evolution.mq_state_at(tau), sys.n_spins(), policy);
  if (pair) {
    const double c = magic_basis_concurrence(state);
    rep.measure = c * c;
  } else {
    rep.measure = 2.0 * labeled_lambdas(state, 1, 2, policy).even_sector;
  }
  rep.error = std::abs(rep.j2 - rep.measure);
  rep.pass = rep.error < policy.equality_tol;
  return rep;
}

}  // namespace mqspin
