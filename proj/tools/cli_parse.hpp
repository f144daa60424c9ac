#pragma once

// Value parsers and config-file handling for the mqspin command line.

#include <algorithm>
#include <cctype>
#include <complex>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mqspin::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

inline double parse_double(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != t.size()) throw UsageError("not a number: '" + text + "'");
  return v;
}

/// Coupling in rad/s: a plain number, or `2pi*<Hz>` (also `2*pi*<Hz>`).
inline double parse_coupling(const std::string& text) {
  std::string t = trim(text);
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  for (const std::string prefix : {"2pi*", "2*pi*"}) {
    if (t.rfind(prefix, 0) == 0) return 2.0 * std::numbers::pi * parse_double(t.substr(prefix.size()));
  }
  return parse_double(t);
}

/// Complex literal: `x`, `yi`, `x+yi`, `x-yi`, `i`, `-i`.
inline std::complex<double> parse_complex(const std::string& text) {
  std::string t = trim(text);
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  if (t.empty()) throw UsageError("empty complex value");
  if (t.back() != 'i' && t.back() != 'j') return {parse_double(t), 0.0};
  t.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto imag_part = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (split == std::string::npos) return {0.0, imag_part(t)};
  return {parse_double(t.substr(0, split)), imag_part(t.substr(split))};
}

inline std::vector<std::string> split_list(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// Reads `key = value` lines ('#' starts a comment) and returns `--key=value` tokens.
inline std::vector<std::string> config_tokens(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(line_no) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty()) throw UsageError("config line " + std::to_string(line_no) + ": empty key");
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

/// Inserts tokens from a `--config <file>` (or `--config=<file>`) right after the
/// subcommand, so explicit command-line flags (parsed later) take precedence.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (!path) return args;
  std::ifstream in(*path);
  if (!in) throw UsageError("cannot open config file '" + *path + "'");
  const auto tokens = config_tokens(in);
  const std::size_t at = args.empty() ? 0 : 1;
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), tokens.begin(), tokens.end());
  return args;
}

}  // namespace mqspin::cli
