#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tfq/pseudodiff.hpp"

namespace tfq {

/// Settings shared by every experiment. Read from a key=value file (see
/// config/default.conf for the documented keys); command-line flags override.
struct ExperimentConfig {
  std::size_t grid_n = 256;
  double grid_l = 16.0;
  bool shifted = false;
  std::vector<double> tau_list;

  double r1 = 2.0;
  double r2 = 2.0;
  std::string weight = "constant";
  std::string symbol = "gaussian";
  double symbol_p = 2.0;
  double symbol_q = 2.0;
  std::size_t symbol_n = 128;
  double symbol_l = 16.0;
  std::size_t z_stride = 2;

  ProbeConfig probes;

  std::vector<double> epsilon_list;
  std::size_t refine_n = 131072;
  double refine_l = 2.0;

  std::string norms_f = "gaussian";
  std::string norms_g = "gaussian";
  double norms_p1 = 2.0;
  double norms_p2 = 2.0;

  int young_instances = 10;

  std::map<std::string, double> tolerances;

  Grid1D grid() const { return Grid1D(grid_n, grid_l, shifted); }
  SymbolStftPlan symbol_plan() const;
  double tol(const std::string& name) const;

  /// Sorted key=value lines covering every field; the input to hash().
  std::string canonical() const;
  /// FNV-1a 64 of canonical(), as 16 hex digits.
  std::string hash() const;
};

ExperimentConfig default_config();
std::map<std::string, double> default_tolerances();

/// Sets one documented key; throws std::invalid_argument on unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Defaults overlaid with the file's settings. Blank lines and '#' comments are ignored.
ExperimentConfig load_config(const std::string& path);

/// "a,b,c" or "start:step:stop" (inclusive, rounded to 12 decimals).
std::vector<double> parse_real_list(const std::string& text);

/// "inf" or a real number.
double parse_exponent(const std::string& text);

/// "constant", "radial_poly:s", "separable_poly:s1:s2" or "exponential:a".
Weight parse_weight(const std::string& text);

/// Closed-form symbols by name: gaussian, zero, one, multiplier-x, multiplier-xi,
/// counterexample.
Symbol named_symbol(const std::string& name);

std::uint64_t fnv1a64(const std::string& text);

/// Fixed-width scientific notation with 17 significant digits.
std::string format_real(double v);

}  // namespace tfq
