#pragma once

// Time sweeps over named observables and their CSV rendering.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "dynamics.hpp"
#include "entanglement.hpp"
#include "errors.hpp"
#include "spin_model.hpp"

namespace mqspin {

enum class ChannelKind {
  Intensity,     // J_n
  Concurrence2,  // C^2, two spins
  Entropy,       // E, two spins
  PairC2,        // C^2_XY, three spins
  PairE,         // entanglement of formation of a pair
  OneToPairC2,   // C^2_X(YZ)
  OneToPairE,
  Tangle,        // tau_ABC
  TangleE,       // entanglement implied by sqrt(tau)
  Lambda1,       // sector eigenvalues of the BC pair
  Lambda2,
};

struct Channel {
  std::string name;
  ChannelKind kind;
  int order = 0;       // Intensity
  int spin_a = 0;      // PairC2/PairE spins, or focus spin for OneToPair*
  int spin_b = 0;

  bool needs_state() const { return kind != ChannelKind::Intensity; }
};

/// Parses a channel name for an N-spin system. Names:
///   J<n>                        any N, 0 <= n <= N
///   C2, E                       two spins
///   C2_XY, E_XY                 three spins, XY in {AB, AC, BC}
///   C2_X_YZ, E_X_YZ             three spins (also accepted as C2_X(YZ))
///   tau, E_tau, lambda1, lambda2   three spins
inline Channel parse_channel(const std::string& raw, int n_spins) {
  std::string name = raw;
  for (char& ch : name) {
    if (ch == '(') ch = '_';
  }
  if (!name.empty() && name.back() == ')') name.pop_back();

  const auto unavailable = [&](const char* why) {
    return ScopeError("channel '" + raw + "' " + why + " (system has " + std::to_string(n_spins) + " spins)");
  };
  const auto spin_of = [](char c) { return c - 'A'; };
  const auto is_label = [](char c) { return c >= 'A' && c <= 'C'; };

  if (name.size() >= 2 && name[0] == 'J' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
    const int n = std::stoi(name.substr(1));
    if (n > n_spins) throw unavailable("exceeds the largest coherence order");
    return {raw, ChannelKind::Intensity, n};
  }
  if (name == "C2" || name == "E") {
    if (n_spins != 2) throw unavailable("is defined for two spins only");
    return {raw, name == "C2" ? ChannelKind::Concurrence2 : ChannelKind::Entropy};
  }
  if (n_spins != 3) {
    const bool known = name == "tau" || name == "E_tau" || name == "lambda1" || name == "lambda2" ||
                       name.rfind("C2_", 0) == 0 || name.rfind("E_", 0) == 0;
    if (known) throw unavailable("is defined for three spins only");
    throw ScopeError("unknown channel '" + raw + "'");
  }
  if (name == "tau") return {raw, ChannelKind::Tangle};
  if (name == "E_tau") return {raw, ChannelKind::TangleE};
  if (name == "lambda1") return {raw, ChannelKind::Lambda1};
  if (name == "lambda2") return {raw, ChannelKind::Lambda2};

  const bool c2 = name.rfind("C2_", 0) == 0;
  const bool e = name.rfind("E_", 0) == 0;
  if (c2 || e) {
    const std::string rest = name.substr(c2 ? 3 : 2);
    if (rest.size() == 2 && is_label(rest[0]) && is_label(rest[1]) && rest[0] < rest[1]) {
      return {raw, c2 ? ChannelKind::PairC2 : ChannelKind::PairE, 0, spin_of(rest[0]), spin_of(rest[1])};
    }
    if (rest.size() == 4 && rest[1] == '_' && is_label(rest[0]) && is_label(rest[2]) && is_label(rest[3]) &&
        rest[0] != rest[2] && rest[0] != rest[3] && rest[2] != rest[3]) {
      return {raw, c2 ? ChannelKind::OneToPairC2 : ChannelKind::OneToPairE, 0, spin_of(rest[0])};
    }
  }
  throw ScopeError("unknown channel '" + raw + "'");
}

/// Default observables for each system size.
inline std::vector<std::string> default_channels(int n_spins) {
  if (n_spins == 2) return {"J0", "J2", "E"};
  if (n_spins == 3) return {"J0", "J2", "C2_BC", "C2_A_BC", "tau"};
  std::vector<std::string> out;
  for (int n = 0; n <= n_spins; n += 2) out.push_back("J" + std::to_string(n));
  return out;
}

/// Evaluates channels at a single time.
inline std::vector<double> evaluate_channels(const MqEvolution& evolution, const std::vector<Channel>& channels,
                                             double tau, const NumericPolicy& policy = {}) {
  bool need_spectrum = false, need_state = false;
  for (const auto& c : channels) {
    need_spectrum = need_spectrum || c.kind == ChannelKind::Intensity;
    need_state = need_state || c.needs_state();
  }
  std::optional<CoherenceSpectrum> spectrum;
  if (need_spectrum) spectrum = evolution.spectrum_at(tau);
  std::optional<PureState> state;
  if (need_state) state.emplace(PureState::normalized(evolution.mq_state_at(tau), evolution.n_spins()));

  std::optional<double> tangle;
  const auto get_tangle = [&]() {
    if (!tangle) tangle = three_tangle(*state, policy);
    return *tangle;
  };

  std::vector<double> out;
  out.reserve(channels.size());
  for (const auto& c : channels) {
    switch (c.kind) {
      case ChannelKind::Intensity: out.push_back(spectrum->at(c.order)); break;
      case ChannelKind::Concurrence2: {
        const double v = magic_basis_concurrence(*state);
        out.push_back(v * v);
        break;
      }
      case ChannelKind::Entropy: out.push_back(bipartite_entanglement(*state, {0}, policy)); break;
      case ChannelKind::PairC2: out.push_back(pair_c2(*state, c.spin_a, c.spin_b, policy)); break;
      case ChannelKind::PairE:
        out.push_back(concurrence_to_entanglement(
            wootters_concurrence(pair_density(*state, c.spin_a, c.spin_b), policy)));
        break;
      case ChannelKind::OneToPairC2: out.push_back(one_to_pair_c2(*state, c.spin_a, policy)); break;
      case ChannelKind::OneToPairE: {
        const double v = std::clamp(one_to_pair_c2(*state, c.spin_a, policy), 0.0, 1.0);
        out.push_back(concurrence_to_entanglement(std::sqrt(v)));
        break;
      }
      case ChannelKind::Tangle: out.push_back(get_tangle()); break;
      case ChannelKind::TangleE:
        out.push_back(concurrence_to_entanglement(std::sqrt(std::clamp(get_tangle(), 0.0, 1.0))));
        break;
      case ChannelKind::Lambda1: out.push_back(labeled_lambdas(*state, 1, 2, policy).even_sector); break;
      case ChannelKind::Lambda2: out.push_back(labeled_lambdas(*state, 1, 2, policy).odd_sector); break;
    }
  }
  return out;
}

struct SweepConfig {
  SpinSystem system;
  double t_start_ms = 0.0;
  double t_end_ms = 0.4;
  int steps = 801;
  std::vector<std::string> channels;

  void validate() const {
    if (!(t_start_ms >= 0.0)) throw DomainError("sweep: t-start must be >= 0");
    if (!(t_end_ms > t_start_ms)) throw DomainError("sweep: t-end must exceed t-start");
    if (steps < 2) throw DomainError("sweep: need at least 2 steps");
  }
};

struct SweepResult {
  std::vector<std::string> channel_names;
  std::vector<double> t_ms;
  std::vector<std::vector<double>> rows;  // rows[i][c]
};

/// Grid time k of a sweep, in milliseconds.
inline double grid_time_ms(const SweepConfig& cfg, int k) {
  const double step = (cfg.t_end_ms - cfg.t_start_ms) / (cfg.steps - 1);
  return k == cfg.steps - 1 ? cfg.t_end_ms : cfg.t_start_ms + k * step;
}

inline SweepResult run_sweep(const SweepConfig& cfg, const NumericPolicy& policy = {}) {
  cfg.validate();
  const int n = cfg.system.n_spins();
  const std::vector<std::string> names = cfg.channels.empty() ? default_channels(n) : cfg.channels;
  std::vector<Channel> channels;
  for (const auto& name : names) channels.push_back(parse_channel(name, n));

  const MqEvolution evolution(cfg.system, policy);
  SweepResult result;
  result.channel_names = names;
  result.t_ms.resize(static_cast<std::size_t>(cfg.steps));
  result.rows.resize(static_cast<std::size_t>(cfg.steps));
  for (int k = 0; k < cfg.steps; ++k) {
    const double t_ms = grid_time_ms(cfg, k);
    result.t_ms[static_cast<std::size_t>(k)] = t_ms;
    result.rows[static_cast<std::size_t>(k)] = evaluate_channels(evolution, channels, t_ms * 1e-3, policy);
  }
  return result;
}

/// Scientific notation, 12 significant digits; negative zero prints as zero.
inline std::string format_csv_value(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

inline void write_csv(std::ostream& os, const SweepResult& r) {
  os << "t_ms";
  for (const auto& name : r.channel_names) os << ',' << name;
  os << '\n';
  for (std::size_t i = 0; i < r.t_ms.size(); ++i) {
    os << format_csv_value(r.t_ms[i]);
    for (double v : r.rows[i]) os << ',' << format_csv_value(v);
    os << '\n';
  }
}

}  // namespace mqspin
