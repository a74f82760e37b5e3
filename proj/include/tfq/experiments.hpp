#pragma once

#include <map>
#include <string>
#include <vector>

#include "tfq/config.hpp"

namespace tfq {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Header plus rows of already-formatted cells; every row ends with the config hash.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct RunSummary {
  std::string command;
  std::string config_hash;
  std::vector<CheckResult> checks;
  std::map<std::string, std::string> metrics;

  bool all_pass() const;
  std::vector<std::string> failures() const;
};

/// Section names accepted by run_verify: grid, stft, wigner, factorization, gaussian,
/// symplectic, spaces, operators.
const std::vector<std::string>& verify_sections();

/// Runs the identity and invariant checks of the requested sections (all when empty).
/// Each check appears once, named after what it measures with "[tau=...]" appended
/// where it depends on τ; τ-dependent checks run for the configured τ list only.
RunSummary run_verify(const ExperimentConfig& cfg, CsvTable& csv,
                      const std::vector<std::string>& sections = {});

/// Per τ: α(r₁,r₂,τ), the probe lower bound of ‖Op_τ(a)‖ on M^{r₁,r₂}_m, the symbol norm
/// ‖a‖ in W(ℱL^p_{v_J}, L^q) and the ratios norm_lower/(α‖a‖) and norm_lower/‖a‖.
/// τ values at the endpoints are skipped because α is undefined there.
CsvTable run_scaling(const ExperimentConfig& cfg, RunSummary& summary);

/// ‖Op₀(a)φ‖² over [ε,1] for the singular symbol, its closed form, the anti-KN pairing
/// |⟨Op₁(a)g_ε, φ⟩| with g_ε the normalized restriction of Op₀(a)φ to [ε,1], and the
/// slope of partial_l2_sq against ln(1/ε) (reported in the summary).
CsvTable run_counterexample(const ExperimentConfig& cfg, RunSummary& summary);

/// Per τ in (0,1): Wiener amalgam and modulation norms of W_τ(g,f) with the α-scaled and
/// uniform right-hand sides.
CsvTable run_norms(const ExperimentConfig& cfg, RunSummary& summary);

/// Samples of convert_symbol(a, τ₁, τ₂) on the operator phase grid, plus the matrix
/// equivalence residual in the summary.
CsvTable run_convert(const ExperimentConfig& cfg, double tau1, double tau2, RunSummary& summary);

/// Reference value (1/4)(E₁(πε²) - E₁(π)) of ∫_ε^1 (1/2)x^{-1} e^{-πx²} dx.
double counterexample_closed_form(double eps);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

void write_csv(const std::string& path, const CsvTable& table);
std::string csv_text(const CsvTable& table);

/// key=value file with the run metadata, every check, the metrics and the tolerance table.
void write_summary(const std::string& path, const RunSummary& summary, const ExperimentConfig& cfg);

}  // namespace tfq
