// mqspin: MQ NMR spin dynamics sweeps, self-verification and state classification.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_parse.hpp"
#include "mqspin/mqspin.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct SweepOptions {
  std::string system = "pair";
  int spins = 0;
  std::string d12, d13, d23;
  std::string couplings;
  double spacing = 0.0;
  double t_start = 0.0;
  double t_end = 0.4;
  int steps = 801;
  std::string channels;
  std::string out = "-";
  double tol = 1e-10;
  std::string config;
};

struct VerifyOptions {
  std::string scope = "all";
  double tol = 1e-10;
  std::uint64_t seed = 20031015;
};

struct ClassifyOptions {
  std::string a, b, c, d;
  std::string family = "even";
  bool normalize = false;
  double tol = 1e-8;
};

double coupling_or(const std::string& text, double fallback) {
  return text.empty() ? fallback : mqspin::cli::parse_coupling(text);
}

mqspin::SpinSystem make_system(const SweepOptions& o, const mqspin::NumericPolicy& policy) {
  using mqspin::SpinSystem;
  const double preset = mqspin::constants::kPresetCoupling;
  if (o.system == "pair") return SpinSystem::pair(coupling_or(o.d12, preset));
  if (o.system == "ring3") return SpinSystem::ring3(coupling_or(o.d12, preset));
  if (o.system == "three") {
    if (o.d12.empty() || o.d13.empty() || o.d23.empty()) {
      throw mqspin::cli::UsageError("--system three needs --d12, --d13 and --d23");
    }
    return SpinSystem::three(coupling_or(o.d12, 0), coupling_or(o.d13, 0), coupling_or(o.d23, 0));
  }
  if (o.system == "chain") {
    if (o.spins < 2) throw mqspin::cli::UsageError("--system chain needs --spins >= 2");
    if (o.spacing > 0.0) return SpinSystem::chain_from_geometry(o.spins, o.spacing, mqspin::constants::kProtonGamma, policy);
    return SpinSystem::chain(o.spins, coupling_or(o.d12, preset), policy);
  }
  if (o.system == "custom") {
    std::vector<double> c;
    for (const auto& item : mqspin::cli::split_list(o.couplings)) c.push_back(mqspin::cli::parse_coupling(item));
    return SpinSystem(o.spins, std::move(c), policy);
  }
  throw mqspin::cli::UsageError("unknown system '" + o.system + "' (pair, ring3, three, chain, custom)");
}

int cmd_sweep(const SweepOptions& o) {
  mqspin::NumericPolicy policy;
  policy.equality_tol = o.tol;
  mqspin::SweepConfig cfg{make_system(o, policy), o.t_start, o.t_end, o.steps, mqspin::cli::split_list(o.channels)};
  const mqspin::SweepResult result = mqspin::run_sweep(cfg, policy);
  if (o.out == "-") {
    mqspin::write_csv(std::cout, result);
  } else {
    std::ofstream file(o.out);
    if (!file) throw mqspin::cli::UsageError("cannot write '" + o.out + "'");
    mqspin::write_csv(file, result);
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& o) {
  mqspin::VerifyScope scope;
  if (o.scope == "all") scope = mqspin::VerifyScope::All;
  else if (o.scope == "two-spin") scope = mqspin::VerifyScope::TwoSpin;
  else if (o.scope == "three-spin") scope = mqspin::VerifyScope::ThreeSpin;
  else if (o.scope == "random") scope = mqspin::VerifyScope::Random;
  else throw mqspin::cli::UsageError("unknown scope '" + o.scope + "' (all, two-spin, three-spin, random)");

  mqspin::NumericPolicy policy;
  policy.equality_tol = o.tol;
  const auto results = mqspin::run_verification(scope, policy, o.seed);
  bool ok = true;
  for (const auto& r : results) {
    std::printf("%s  %-70s max_err=%.3e tol=%.1e n=%d\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.max_error,
                r.tolerance, r.samples);
    ok = ok && r.pass;
  }
  if (!ok) {
    for (const auto& r : results) {
      if (!r.pass) std::fprintf(stderr, "verification failed: %s\n", r.name.c_str());
    }
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_classify(const ClassifyOptions& o) {
  using mqspin::cli::parse_complex;
  mqspin::Parity parity;
  if (o.family == "even") parity = mqspin::Parity::Even;
  else if (o.family == "odd") parity = mqspin::Parity::Odd;
  else throw mqspin::cli::UsageError("family must be 'even' or 'odd'");

  mqspin::ComplexVector v =
      mqspin::family_amplitudes(parse_complex(o.a), parse_complex(o.b), parse_complex(o.c), parse_complex(o.d), parity);
  const double norm = v.norm();
  if (!(norm > 0.0)) throw mqspin::cli::UsageError("coefficients are all zero");
  if (std::abs(norm * norm - 1.0) > 1e-9) {
    if (!o.normalize) {
      throw mqspin::cli::UsageError("|a|^2+|b|^2+|c|^2+|d|^2 = " + std::to_string(norm * norm) +
                                    "; pass --normalize to rescale");
    }
  }
  v /= norm;

  mqspin::NumericPolicy policy;
  policy.classification_tol = o.tol;
  const mqspin::PureState state(v, 3, policy);
  const auto report = mqspin::entanglement_report(state, policy);
  std::printf("classification: %s\n", mqspin::to_string(mqspin::classify(report, o.tol)).c_str());
  for (const auto& [k, val] : report.pair_c2) std::printf("C2_%s = %.12g\n", k.c_str(), val);
  for (const auto& [k, val] : report.one_to_pair_c2) {
    std::string rest;
    for (char s : std::string("ABC"))
      if (s != k[0]) rest += s;
    std::printf("C2_%s(%s) = %.12g\n", k.c_str(), rest.c_str(), val);
  }
  std::printf("tau_ABC = %.12g\n", report.three_tangle);
  for (const auto& [k, val] : report.entropies) std::printf("S(%s) = %.12g bits\n", k.c_str(), val);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-quantum NMR spin dynamics and entanglement"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  SweepOptions so;
  auto* sweep = app.add_subcommand("sweep", "Emit a CSV time series of MQ intensities and entanglement measures");
  sweep->add_option("--system", so.system, "pair | ring3 | three | chain | custom")->capture_default_str();
  sweep->add_option("--spins", so.spins, "Spin count (chain, custom)");
  sweep->add_option("--d12", so.d12, "Coupling D12 in rad/s, or 2pi*<Hz>; nearest-neighbour coupling for chain");
  sweep->add_option("--d13", so.d13, "Coupling D13 (three)");
  sweep->add_option("--d23", so.d23, "Coupling D23 (three)");
  sweep->add_option("--couplings", so.couplings, "Comma-separated D_jk for j<k (custom)");
  sweep->add_option("--spacing", so.spacing, "Chain spacing in metres; couplings from geometry at theta = 0");
  sweep->add_option("--t-start", so.t_start, "Start time in ms")->capture_default_str();
  sweep->add_option("--t-end", so.t_end, "End time in ms")->capture_default_str();
  sweep->add_option("--steps", so.steps, "Number of grid points")->capture_default_str();
  sweep->add_option("--channels", so.channels, "Comma-separated observables, e.g. J0,J2,E or C2_BC,C2_A_BC,tau");
  sweep->add_option("--out", so.out, "Output file, '-' for stdout")->capture_default_str();
  sweep->add_option("--tol", so.tol, "Equality tolerance for internal cross-checks")->capture_default_str();
  sweep->add_option("--config", so.config, "key=value file; command-line flags override it");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run closed-form and identity checks");
  verify->add_option("--scope", vo.scope, "all | two-spin | three-spin | random")->capture_default_str();
  verify->add_option("--tol", vo.tol, "Pass threshold for each check")->capture_default_str();
  verify->add_option("--seed", vo.seed, "Random seed")->capture_default_str();

  ClassifyOptions co;
  auto* classify = app.add_subcommand("classify", "Classify a|000>+b|011>+c|101>+d|110> (or its odd partner)");
  classify->add_option("--a", co.a, "Coefficient a (complex: 0.5, 0.5+0.5i, -i)")->required();
  classify->add_option("--b", co.b, "Coefficient b")->required();
  classify->add_option("--c", co.c, "Coefficient c")->required();
  classify->add_option("--d", co.d, "Coefficient d")->required();
  classify->add_option("--family", co.family, "even | odd")->capture_default_str();
  classify->add_flag("--normalize", co.normalize, "Rescale coefficients to unit norm");
  classify->add_option("--tol", co.tol, "Threshold on squared measures")->capture_default_str();

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = mqspin::cli::expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const mqspin::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(so);
    if (verify->parsed()) return cmd_verify(vo);
    if (classify->parsed()) return cmd_classify(co);
  } catch (const mqspin::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const mqspin::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
