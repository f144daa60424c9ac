// Prints J2 and the entanglement measures of the equal-coupling three-spin ring
// at a few times, and the closed-form J2 for comparison.

#include <cstdio>
#include <numbers>

#include "mqspin/mqspin.hpp"

int main() {
  using namespace mqspin;
  const double d = constants::kPresetCoupling;
  const MqEvolution evolution(SpinSystem::ring3(d));

  std::printf("%8s %12s %12s %12s %12s %12s\n", "t [ms]", "J2", "J2 closed", "C2_BC", "C2_A(BC)", "tau_ABC");
  for (int k = 0; k <= 8; ++k) {
    const double t = k * 0.05e-3;
    const PureState psi = PureState::normalized(evolution.mq_state_at(t), 3);
    std::printf("%8.3f %12.8f %12.8f %12.8f %12.8f %12.8f\n", t * 1e3, evolution.spectrum_at(t).at(2),
                three_spin_ring_J2(ring_phase(d, t)), pair_c2(psi, 1, 2), one_to_pair_c2(psi, 0), three_tangle(psi));
  }
}
