#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tfq/experiments.hpp"
#include "tfq/fft.hpp"

namespace {

struct Common {
  std::string config_path;
  std::optional<std::size_t> grid_n;
  std::optional<double> grid_l;
  std::string tau;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  bool shifted = false;
  std::vector<std::string> settings;
  double corrupt_twiddle = 0.0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--grid-n", c.grid_n, "samples per axis (power of two)");
  cmd->add_option("--grid-l", c.grid_l, "window length L of [-L/2, L/2)");
  cmd->add_option("--tau", c.tau, "tau list: a,b,c or start:step:stop");
  cmd->add_option("--seed", c.seed, "probe seed");
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
  cmd->add_flag("--shifted-grid", c.shifted, "use the half-step shifted lattice");
  cmd->add_option("--set", c.settings, "extra key=value setting (repeatable)");
  cmd->add_option("--corrupt-twiddle", c.corrupt_twiddle)->group("");
}

tfq::ExperimentConfig resolve(const Common& c) {
  tfq::ExperimentConfig cfg = c.config_path.empty() ? tfq::default_config() : tfq::load_config(c.config_path);
  if (c.grid_n) cfg.grid_n = *c.grid_n;
  if (c.grid_l) cfg.grid_l = *c.grid_l;
  if (!c.tau.empty()) tfq::apply_setting(cfg, "tau_list", c.tau);
  if (c.seed) cfg.probes.seed = *c.seed;
  if (c.shifted) cfg.shifted = true;
  for (const auto& kv : c.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    tfq::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  tfq::Grid1D(cfg.grid_n, cfg.grid_l, cfg.shifted);
  return cfg;
}

int finish(const Common& c, const tfq::ExperimentConfig& cfg, const tfq::RunSummary& s, const tfq::CsvTable& csv) {
  std::filesystem::create_directories(c.out);
  const std::filesystem::path dir(c.out);
  tfq::write_csv((dir / (s.command + ".csv")).string(), csv);
  tfq::write_summary((dir / (s.command + "_summary.txt")).string(), s, cfg);
  for (const auto& chk : s.checks)
    if (!chk.pass)
      std::printf("FAIL %s value=%s threshold=%s\n", chk.name.c_str(), tfq::format_real(chk.value).c_str(),
                  tfq::format_real(chk.threshold).c_str());
  for (const auto& [k, v] : s.metrics) std::printf("%s = %s\n", k.c_str(), v.c_str());
  std::printf("%s: %zu rows, %zu checks, %zu failed (config %s) -> %s\n", s.command.c_str(), csv.rows.size(),
              s.checks.size(), s.failures().size(), s.config_hash.c_str(), (dir / (s.command + ".csv")).c_str());
  return s.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-frequency quantization experiments"};
  app.require_subcommand(1);

  Common common;
  std::string sections;
  double tau1 = 0.5, tau2 = 0.0;

  auto* verify = app.add_subcommand("verify", "run the identity and invariant checks");
  add_common(verify, common);
  verify->add_option("--sections", sections, "comma-separated subset of the check sections");
  auto* scaling = app.add_subcommand("scaling", "operator norm lower bounds against alpha(tau)");
  add_common(scaling, common);
  auto* counter = app.add_subcommand("counterexample", "divergence of the endpoint quantizations");
  add_common(counter, common);
  auto* norms = app.add_subcommand("norms", "Wiener amalgam and modulation norms of W_tau(g,f)");
  add_common(norms, common);
  auto* convert = app.add_subcommand("convert", "convert a symbol between quantizations");
  add_common(convert, common);
  convert->add_option("--from", tau1, "source tau")->capture_default_str();
  convert->add_option("--to", tau2, "target tau")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const tfq::ExperimentConfig cfg = resolve(common);
    tfq::fft::set_twiddle_fault(common.corrupt_twiddle);
    tfq::RunSummary summary;
    tfq::CsvTable csv;
    if (verify->parsed()) {
      std::vector<std::string> list;
      std::stringstream ss(sections);
      for (std::string s; std::getline(ss, s, ',');)
        if (!s.empty()) list.push_back(s);
      summary = tfq::run_verify(cfg, csv, list);
    } else if (scaling->parsed()) {
      csv = tfq::run_scaling(cfg, summary);
    } else if (counter->parsed()) {
      csv = tfq::run_counterexample(cfg, summary);
    } else if (norms->parsed()) {
      csv = tfq::run_norms(cfg, summary);
    } else {
      csv = tfq::run_convert(cfg, tau1, tau2, summary);
    }
    return finish(common, cfg, summary, csv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
