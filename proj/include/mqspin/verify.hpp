#pragma once

// Self-verification suite: closed forms against numeric evolution and the
// conservation and entanglement identities, with the largest observed error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "dynamics.hpp"
#include "entanglement.hpp"
#include "spin_model.hpp"

namespace mqspin {

struct CheckResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  bool pass = false;
};

enum class VerifyScope { All, TwoSpin, ThreeSpin, Random };

namespace verification {

inline constexpr double kCouplingScale = 2.0 * std::numbers::pi * 5000.0;  // rad/s
inline constexpr double kMaxTau = 1e-3;                                    // s

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double coupling() { return uniform(-kCouplingScale, kCouplingScale); }
  double tau() { return uniform(0.0, kMaxTau); }
  Complex gaussian_complex() {
    std::normal_distribution<double> g;
    return {g(rng_), g(rng_)};
  }
  std::vector<double> couplings(int n_spins) {
    std::vector<double> c(static_cast<std::size_t>(n_spins * (n_spins - 1) / 2));
    for (double& d : c) d = coupling();
    return c;
  }

 private:
  std::mt19937_64 rng_;
};

/// Runs `sample` `count` times and records the largest returned error.
inline CheckResult run_check(std::string name, double tol, int count, const std::function<double(int)>& sample) {
  CheckResult r{std::move(name), 0.0, tol, count, false};
  for (int i = 0; i < count; ++i) r.max_error = std::max(r.max_error, sample(i));
  r.pass = r.max_error < tol;
  return r;
}

inline std::vector<CheckResult> two_spin_checks(Sampler& s, const NumericPolicy& policy) {
  const double tol = policy.equality_tol;
  std::vector<CheckResult> out;
  out.push_back(run_check("two-spin closed-form density vs numeric evolution", tol, 100, [&](int) {
    const double d = s.coupling(), tau = s.tau();
    const DensityMatrix numeric = evolve(build_hamiltonian(SpinSystem::pair(d)), initial_density(2), tau, policy);
    return max_abs_diff(two_spin_density(pair_phase(d, tau)).matrix(), numeric.matrix());
  }));
  out.push_back(run_check("two-spin density = 2|psi><psi| - E'", tol, 50, [&](int) {
    const double phi = s.uniform(-10.0, 10.0);
    const ComplexMatrix rebuilt = 2.0 * two_spin_state(phi).projector() - two_spin_offset();
    return max_abs_diff(rebuilt, two_spin_density(phi).matrix());
  }));
  out.push_back(run_check("two-spin intensities J0 = cos^2, J2 = sin^2", tol, 50, [&](int) {
    const double d = s.coupling(), tau = s.tau();
    const auto spec = MqEvolution(SpinSystem::pair(d), policy).spectrum_at(tau);
    const double phi = d * tau;
    return std::max(std::abs(spec.at(0) - std::pow(std::cos(phi), 2)),
                    std::abs(spec.at(2) - std::pow(std::sin(phi), 2)));
  }));
  out.push_back(run_check("two-spin C^2 = J2", tol, 50, [&](int) {
    return j2_identity_check(SpinSystem::pair(s.coupling()), s.tau(), policy).error;
  }));
  out.push_back(run_check("two-spin entropy = binary entropy of concurrence", tol, 50, [&](int) {
    const double phi = s.uniform(-10.0, 10.0);
    const PureState psi = two_spin_state(phi);
    return std::abs(bipartite_entanglement(psi, {0}, policy) -
                    concurrence_to_entanglement(magic_basis_concurrence(psi)));
  }));
  return out;
}

inline std::vector<CheckResult> three_spin_checks(Sampler& s, const NumericPolicy& policy) {
  const double tol = policy.equality_tol;
  std::vector<CheckResult> out;
  out.push_back(run_check("three-spin closed-form blocks vs numeric evolution (unequal couplings)", tol, 100,
                          [&](int) {
                            const double d12 = s.coupling(), d13 = s.coupling(), d23 = s.coupling();
                            const double tau = s.tau();
                            const MqEvolution ev(SpinSystem::three(d12, d13, d23), policy);
                            return std::max(
                                max_abs_diff(three_spin_density(d12, d13, d23, tau), ev.even_block_at(tau)),
                                max_abs_diff(three_spin_density_odd(d12, d13, d23, tau), ev.odd_block_at(tau)));
                          }));
  out.push_back(run_check("ring J2 = (2/3) sin^2(phi)", tol, 50, [&](int) {
    const double d = s.coupling(), tau = s.tau();
    const auto spec = MqEvolution(SpinSystem::ring3(d), policy).spectrum_at(tau);
    return std::abs(spec.at(2) - three_spin_ring_J2(ring_phase(d, tau)));
  }));
  out.push_back(run_check("ring density = 2|psi><psi| - E/2", tol, 50, [&](int) {
    const double phi = s.uniform(-10.0, 10.0);
    const ComplexMatrix p = three_spin_ring_state(phi).projector();
    const std::vector<BasisIndex> even{0, 3, 5, 6};
    const ComplexMatrix rebuilt = 2.0 * extract_block(p, even) - 0.5 * ComplexMatrix::Identity(4, 4);
    return max_abs_diff(rebuilt, three_spin_ring_density(phi));
  }));
  out.push_back(run_check("monogamy residuals = 16|abcd|", tol, 200, [&](int i) {
    ComplexVector v(4);
    for (int k = 0; k < 4; ++k) v(k) = s.gaussian_complex();
    v.normalize();
    const PureState psi = family_state(v(0), v(1), v(2), v(3), i % 2 ? Parity::Odd : Parity::Even, policy);
    const double expected = 16.0 * std::abs(v(0)) * std::abs(v(1)) * std::abs(v(2)) * std::abs(v(3));
    double err = 0.0;
    for (double r : monogamy_residuals(psi, policy)) err = std::max(err, std::abs(r - expected));
    return err;
  }));
  out.push_back(run_check("lambda1 = 2 sqrt(lambda2) - 3 lambda2 along the ring trajectory", tol, 200, [&](int i) {
    const double d = constants::kPresetCoupling;
    const double phi = 2.0 * std::numbers::pi * i / 200.0;
    const PureState psi = PureState::normalized(
        MqEvolution(SpinSystem::ring3(d), policy).mq_state_at(phi / (std::numbers::sqrt3 * d)), 3);
    const SectorLambdas l = labeled_lambdas(psi, 1, 2, policy);
    return std::abs(l.even_sector - lambda_relation_check(l.odd_sector));
  }));
  out.push_back(run_check("ring J2 = 2 lambda1", tol, 50, [&](int) {
    return j2_identity_check(SpinSystem::ring3(s.coupling()), s.tau(), policy).error;
  }));
  return out;
}

inline std::vector<CheckResult> random_checks(Sampler& s, const NumericPolicy& policy) {
  const double tol = policy.equality_tol;
  std::vector<CheckResult> out;
  for (int n = 2; n <= 6; ++n) {
    const MqEvolution ev(SpinSystem(n, s.couplings(n)), policy);
    const DensityMatrix rho0 = initial_density(n);
    out.push_back(run_check("sum rule, N=" + std::to_string(n), tol, 50, [&](int) {
      const double tau = s.tau();
      const auto block = ev.spectrum_at(tau);
      const auto full = intensities(ev.density_at(tau), rho0);
      double err = std::max(std::abs(block.total() - 1.0), std::abs(full.total() - 1.0));
      for (int k = 0; k <= n; ++k) {
        err = std::max(err, std::abs(block.at(k) - full.at(k)));
        if (k % 2 == 1) err = std::max(err, std::abs(full.at(k)));
        err = std::max(err, -full.at(k));
      }
      return err;
    }));
  }
  for (int n = 2; n <= 4; ++n) {
    out.push_back(run_check("order split real/imaginary, N=" + std::to_string(n), tol, 50, [&](int) {
      const MqEvolution ev(SpinSystem(n, s.couplings(n)), policy);
      return realpart_order_split_check(ev.density_at(s.tau()), tol).max_violation();
    }));
  }
  return out;
}

}  // namespace verification

inline std::vector<CheckResult> run_verification(VerifyScope scope, const NumericPolicy& policy = {},
                                                 std::uint64_t seed = 20031015) {
  verification::Sampler sampler(seed);
  std::vector<CheckResult> out;
  const auto append = [&out](std::vector<CheckResult> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  if (scope == VerifyScope::All || scope == VerifyScope::TwoSpin) append(verification::two_spin_checks(sampler, policy));
  if (scope == VerifyScope::All || scope == VerifyScope::ThreeSpin)
    append(verification::three_spin_checks(sampler, policy));
  if (scope == VerifyScope::All || scope == VerifyScope::Random) append(verification::random_checks(sampler, policy));
  return out;
}

}  // namespace mqspin
