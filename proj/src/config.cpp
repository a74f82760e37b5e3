#include "tfq/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tfq {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

std::size_t parse_count(const std::string& text) {
  const double v = parse_real(text);
  if (v < 0.0 || v != std::floor(v)) throw std::invalid_argument("not a count: '" + text + "'");
  return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("not a boolean: '" + text + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_real(v[i]);
  }
  return out;
}

}  // namespace

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::map<std::string, double> default_tolerances() {
  return {
      {"identity.moyal_rel", 1e-6},
      {"identity.conjugation", 1e-8},
      {"identity.fourier_covariance", 1e-8},
      {"identity.covariance", 1e-8},
      {"identity.orthogonality_rel", 1e-6},
      {"identity.fundamental", 1e-8},
      {"identity.stft_shift", 1e-8},
      {"identity.change_of_window_slack", 1e-10},
      {"identity.commutation", 1e-8},
      {"identity.symplectic_form", 1e-12},
      {"identity.rihaczek", 1e-12},
      {"identity.stft_gaussian", 1e-10},
      {"identity.via_stft", 1e-6},
      {"grid.parseval", 1e-10},
      {"grid.reflection", 1e-10},
      {"stft_wigner.rel", 1e-5},
      {"gaussian.wigner_closed", 1e-8},
      {"gaussian.stft_closed_rel", 1e-4},
      {"gaussian.amplitude", 1e-12},
      {"gaussian.moyal_rel", 1e-8},
      {"gaussian.symmetry", 1e-10},
      {"gaussian.amplitude_quadrature", 1e-10},
      {"gaussian.l1_spread", 10.0},
      {"symplectic.lemma", 1e-12},
      {"alpha.exact", 1e-12},
      {"operator.identity", 1e-6},
      {"operator.multiplier", 1e-5},
      {"operator.weak_pairing", 1e-6},
      {"operator.rank_one", 1e-4},
      {"operator.conversion", 1e-3},
      {"operator.conversion_semigroup", 1e-10},
      {"operator.adjoint", 1e-8},
      {"operator.kn_agreement", 1e-6},
      {"operator.cross_quantization", 1e-5},
      {"operator.weyl_hermitian", 1e-8},
      {"operator.weyl_rank_one", 1e-5},
      {"operator.adjoint_singular", 1e-6},
      {"operator.chirp_rel", 1e-2},
      {"operator.norm", 1e-6},
      {"spaces.weight", 1e-12},
      {"spaces.young_slack", 1e-10},
      {"spaces.wm_rel", 1e-6},
      {"scaling.spread", 10.0},
      {"norms.l2_uniform", 0.2},
      {"counterexample.slope_dev", 0.05},
      {"counterexample.closed_rel", 1e-3},
      {"counterexample.adjoint_rel", 1e-8},
  };
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.tau_list = parse_real_list("0:0.1:1");
  for (int k = 4; k <= 10; ++k) c.epsilon_list.push_back(std::ldexp(1.0, -k));
  c.tolerances = default_tolerances();
  return c;
}

SymbolStftPlan ExperimentConfig::symbol_plan() const {
  return {PhaseGrid::dual_of(Grid1D(symbol_n, symbol_l)), z_stride};
}

double ExperimentConfig::tol(const std::string& name) const {
  auto it = tolerances.find(name);
  if (it == tolerances.end()) throw std::invalid_argument("unknown tolerance: " + name);
  return it->second;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  const std::string t = trim(text);
  if (t.empty()) return out;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) throw std::invalid_argument("range must be start:step:stop");
    const double a = parse_real(parts[0]), s = parse_real(parts[1]), b = parse_real(parts[2]);
    if (!(s > 0.0)) throw std::invalid_argument("range step must be positive");
    const long n = std::lround(std::floor((b - a) / s + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(std::round((a + i * s) * 1e12) / 1e12);
    return out;
  }
  for (const auto& p : split(t, ',')) out.push_back(parse_real(p));
  return out;
}

double parse_exponent(const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "infinity") return inf;
  const double v = parse_real(t);
  if (!(v >= 1.0)) throw std::invalid_argument("exponent must be >= 1 or inf");
  return v;
}

Weight parse_weight(const std::string& text) {
  const auto parts = split(trim(text), ':');
  const std::string& kind = parts.at(0);
  if (kind == "constant" && parts.size() == 1) return Weight::constant();
  if (kind == "radial_poly" && parts.size() == 2) return Weight::radial_poly(parse_real(parts[1]));
  if (kind == "separable_poly" && parts.size() == 3)
    return Weight::separable_poly(parse_real(parts[1]), parse_real(parts[2]));
  if (kind == "exponential" && parts.size() == 2) return Weight::exponential(parse_real(parts[1]));
  throw std::invalid_argument("unknown weight: '" + text + "'");
}

Symbol named_symbol(const std::string& name) {
  if (name == "gaussian") return symbol_gaussian();
  if (name == "zero") return symbol_constant(0.0);
  if (name == "one") return symbol_constant(1.0);
  if (name == "multiplier-x") return symbol_multiplier_x();
  if (name == "multiplier-xi") return symbol_multiplier_xi();
  if (name == "counterexample") return symbol_counterexample();
  throw std::invalid_argument("unknown symbol: '" + name + "'");
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "grid.n") c.grid_n = parse_count(v);
  else if (key == "grid.l") c.grid_l = parse_real(v);
  else if (key == "grid.shifted") c.shifted = parse_bool(v);
  else if (key == "tau_list") c.tau_list = parse_real_list(v);
  else if (key == "space.r1") c.r1 = parse_exponent(v);
  else if (key == "space.r2") c.r2 = parse_exponent(v);
  else if (key == "space.weight") { parse_weight(v); c.weight = v; }
  else if (key == "symbol.name") { named_symbol(v); c.symbol = v; }
  else if (key == "symbol.p") c.symbol_p = parse_exponent(v);
  else if (key == "symbol.q") c.symbol_q = parse_exponent(v);
  else if (key == "symbol.grid_n") c.symbol_n = parse_count(v);
  else if (key == "symbol.grid_l") c.symbol_l = parse_real(v);
  else if (key == "symbol.z_stride") c.z_stride = parse_count(v);
  else if (key == "probes.extent") c.probes.lattice_extent = static_cast<int>(parse_count(v));
  else if (key == "probes.n_random") c.probes.n_random = static_cast<int>(parse_count(v));
  else if (key == "probes.seed") c.probes.seed = std::stoull(v);
  else if (key == "probes.power") c.probes.power_probe = parse_bool(v);
  else if (key == "counterexample.epsilon_list") c.epsilon_list = parse_real_list(v);
  else if (key == "counterexample.refine_n") c.refine_n = parse_count(v);
  else if (key == "counterexample.refine_l") c.refine_l = parse_real(v);
  else if (key == "norms.f") c.norms_f = v;
  else if (key == "norms.g") c.norms_g = v;
  else if (key == "norms.p1") c.norms_p1 = parse_exponent(v);
  else if (key == "norms.p2") c.norms_p2 = parse_exponent(v);
  else if (key == "verify.young_instances") c.young_instances = static_cast<int>(parse_count(v));
  else if (key.rfind("tol.", 0) == 0) {
    const std::string name = key.substr(4);
    if (!c.tolerances.count(name)) throw std::invalid_argument("unknown tolerance: " + name);
    c.tolerances[name] = parse_real(v);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
  for (double t : c.tau_list)
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("tau_list entries must lie in [0,1]");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  ExperimentConfig c = default_config();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    try {
      apply_setting(c, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

std::string ExperimentConfig::canonical() const {
  std::map<std::string, std::string> kv{
      {"grid.n", std::to_string(grid_n)},
      {"grid.l", format_real(grid_l)},
      {"grid.shifted", shifted ? "true" : "false"},
      {"tau_list", join_reals(tau_list)},
      {"space.r1", format_real(r1)},
      {"space.r2", format_real(r2)},
      {"space.weight", weight},
      {"symbol.name", symbol},
      {"symbol.p", format_real(symbol_p)},
      {"symbol.q", format_real(symbol_q)},
      {"symbol.grid_n", std::to_string(symbol_n)},
      {"symbol.grid_l", format_real(symbol_l)},
      {"symbol.z_stride", std::to_string(z_stride)},
      {"probes.extent", std::to_string(probes.lattice_extent)},
      {"probes.n_random", std::to_string(probes.n_random)},
      {"probes.seed", std::to_string(probes.seed)},
      {"probes.power", probes.power_probe ? "true" : "false"},
      {"counterexample.epsilon_list", join_reals(epsilon_list)},
      {"counterexample.refine_n", std::to_string(refine_n)},
      {"counterexample.refine_l", format_real(refine_l)},
      {"norms.f", norms_f},
      {"norms.g", norms_g},
      {"norms.p1", format_real(norms_p1)},
      {"norms.p2", format_real(norms_p2)},
      {"verify.young_instances", std::to_string(young_instances)},
  };
  for (const auto& [k, v] : tolerances) kv["tol." + k] = format_real(v);
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::string ExperimentConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical())));
  return buf;
}

}  // namespace tfq
