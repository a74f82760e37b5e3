// Acceptance run on the default grid (N = 256, L = 16). Prints one PASS/FAIL line
// per criterion and exits non-zero if any criterion fails. Thresholds are pinned
// here and compared against the measured values, independent of the config table.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "tfq/experiments.hpp"
#include "tfq/spaces.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string tag(const std::string& name, double tau) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", tau);
  return name + "[tau=" + buf + "]";
}

const tfq::CheckResult* find(const tfq::RunSummary& s, const std::string& name) {
  for (const auto& c : s.checks)
    if (c.name == name) return &c;
  return nullptr;
}

// The named check must exist and its value must not exceed `limit`.
void need(Verdict& v, const tfq::RunSummary& s, const std::string& name, double limit) {
  const auto* c = find(s, name);
  if (!c) return v.fail("missing " + name);
  if (!(c->value <= limit)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s = %.3e > %.1e", name.c_str(), c->value, limit);
    v.fail(buf);
  }
}

void need_all_pass(Verdict& v, const tfq::RunSummary& s) {
  for (const auto& c : s.checks)
    if (!c.pass) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s = %.3e > %.1e", c.name.c_str(), c.value, c.threshold);
      v.fail(buf);
    }
}

tfq::RunSummary verify(const std::vector<double>& taus, const std::vector<std::string>& sections,
                       int young_instances = 10) {
  auto cfg = tfq::default_config();
  cfg.tau_list = taus;
  cfg.young_instances = young_instances;
  tfq::CsvTable csv;
  return tfq::run_verify(cfg, csv, sections);
}

std::vector<double> range(const std::string& spec) { return tfq::parse_real_list(spec); }

int failures = 0;

void report(int id, const std::string& title, const Verdict& v, double secs) {
  std::printf("%s criterion %d: %s (%.1f s)%s%s\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              v.detail.empty() ? "" : ": ", v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

void criterion_identities() {
  const auto t0 = Clock::now();
  const auto taus = range("0:0.1:1");
  const auto s = verify(taus, {"grid", "stft", "wigner"});
  const double secs = seconds_since(t0);
  Verdict v;
  need_all_pass(v, s);
  for (double tau : taus) {
    need(v, s, tag("wigner.moyal", tau), 1e-6);
    need(v, s, tag("wigner.covariance", tau), 1e-8);
    need(v, s, tag("wigner.conjugation", tau), 1e-8);
    need(v, s, tag("wigner.fourier_covariance", tau), 1e-8);
  }
  need(v, s, "stft.orthogonality", 1e-6);
  need(v, s, "stft.fundamental_identity", 1e-8);
  need(v, s, "stft.shift_formula", 1e-8);
  if (secs >= 60.0) v.fail("runtime over 60 s");
  report(1, "identity suite for tau = 0, 0.1, ..., 1", v, secs);
}

void criterion_factorization() {
  const auto t0 = Clock::now();
  const std::vector<double> taus = {0.0, 0.25, 0.4, 0.5, 0.75, 1.0};
  const auto s = verify(taus, {"factorization"});
  Verdict v;
  need_all_pass(v, s);
  for (double tau : taus) need(v, s, tag("factorization.direct_2d", tau), 1e-5);
  report(2, "STFT of W_tau factorizes, direct 2-D rel. err < 1e-5", v, seconds_since(t0));
}

void criterion_gaussian() {
  const auto t0 = Clock::now();
  const std::vector<double> taus = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto s = verify(taus, {"gaussian"});
  Verdict v;
  need_all_pass(v, s);
  for (double tau : taus) need(v, s, tag("gaussian.wigner_closed", tau), 1e-8);
  need(v, s, "gaussian.stft_closed", 1e-4);
  need(v, s, "gaussian.amplitude_peak", 1e-12);
  need(v, s, "gaussian.amplitude_quadrature", 1e-10);
  report(3, "Gaussian closed forms and the (2/9)^(1/2) peak amplitude", v, seconds_since(t0));
}

void criterion_symplectic() {
  const auto t0 = Clock::now();
  const auto taus = range("0.1:0.1:0.9");
  const auto s = verify(taus, {"symplectic"});
  Verdict v;
  need_all_pass(v, s);
  for (double tau : taus) need(v, s, tag("symplectic.lemma", tau), 1e-12);
  report(4, "A_tau lemma to 1e-12 for tau = 0.1, ..., 0.9", v, seconds_since(t0));
}

void criterion_alpha(const tfq::RunSummary& spaces, double secs) {
  Verdict v;
  need(v, spaces, "alpha.half", 0.0);
  need(v, spaces, "alpha.one_inf", 1e-12);
  need(v, spaces, "alpha.inf_one", 1e-12);
  need(v, spaces, "alpha.endpoint_limits", 0.0);
  if (tfq::alpha(2.0, 2.0, 0.5) != 4.0) v.fail("alpha(2,2,1/2) is not exactly 4");
  report(5, "alpha(1/2) = 4, (1,inf) column, endpoint limits", v, secs);
}

void criterion_operators() {
  const auto t0 = Clock::now();
  const std::vector<double> taus = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto s = verify(taus, {"operators"});
  Verdict v;
  need_all_pass(v, s);
  for (double tau : taus) {
    need(v, s, tag("operator.identity", tau), 1e-6);
    need(v, s, tag("operator.multiplier_x", tau), 1e-5);
    need(v, s, tag("operator.multiplier_xi", tau), 1e-5);
    need(v, s, tag("operator.weak_pairing", tau), 1e-6);
    need(v, s, tag("operator.rank_one", tau), 1e-4);
  }
  need(v, s, "operator.conversion", 1e-3);
  need(v, s, "operator.adjoint_gaussian", 1e-8);
  report(6, "operator consistency", v, seconds_since(t0));
}

void criterion_scaling() {
  const auto t0 = Clock::now();
  auto cfg = tfq::default_config();
  cfg.tau_list = range("0.05:0.05:0.95");
  tfq::RunSummary scaling;
  const auto csv = tfq::run_scaling(cfg, scaling);
  Verdict v;
  if (csv.rows.size() != 19) v.fail("expected 19 tau rows");
  need_all_pass(v, scaling);
  need(v, scaling, "scaling.ratio_spread", 10.0);
  need(v, scaling, "scaling.l2_uniform", 0.2);

  cfg.tau_list = range("0.1:0.1:0.9");
  tfq::RunSummary norms;
  tfq::run_norms(cfg, norms);
  need(v, norms, "norms.l2_uniform", 0.2);
  report(7, "alpha-normalized ratio spread < 10 and uniform L2 ratio within 20%", v, seconds_since(t0));
}

void criterion_counterexample() {
  const auto t0 = Clock::now();
  tfq::RunSummary s;
  const auto csv = tfq::run_counterexample(tfq::default_config(), s);
  const double secs = seconds_since(t0);
  Verdict v;
  if (csv.rows.size() != 7) v.fail("expected 7 epsilon rows");
  need_all_pass(v, s);
  need(v, s, "counterexample.closed_form_on_0.1_1", 1e-3);
  need(v, s, "counterexample.slope", 0.05);
  if (secs >= 120.0) v.fail("runtime over 120 s");
  report(8, "Op_0(a)phi closed form and slope 1/2 against ln(1/eps)", v, secs);
}

void criterion_spaces(const tfq::RunSummary& s, double secs) {
  Verdict v;
  need_all_pass(v, s);
  need(v, s, "spaces.young_mixed", 1e-10);
  need(v, s, "spaces.young_linf_l1", 1e-10);
  need(v, s, "spaces.young_l2", 1e-10);
  need(v, s, "spaces.wiener_modulation_identity", 1e-6);
  report(9, "Young inequalities on 100 instances and the W-M identity", v, secs);
}

void criterion_reproducibility() {
  const auto t0 = Clock::now();
  auto cfg = tfq::default_config();
  cfg.tau_list = {0.3, 0.5};
  cfg.grid_n = 128;
  cfg.probes.n_random = 4;
  Verdict v;
  const auto twice = [&](const std::string& what, const std::function<std::string()>& run) {
    if (run() != run()) v.fail(what + " CSV bodies differ");
  };
  twice("verify", [&] {
    tfq::CsvTable csv;
    tfq::run_verify(cfg, csv, {"factorization", "spaces"});
    return tfq::csv_text(csv);
  });
  twice("scaling", [&] {
    tfq::RunSummary s;
    return tfq::csv_text(tfq::run_scaling(cfg, s));
  });
  report(10, "identical config and seed give identical CSV bodies", v, seconds_since(t0));
}

}  // namespace

int main() {
  try {
    criterion_identities();
    criterion_factorization();
    criterion_gaussian();
    criterion_symplectic();

    const auto t0 = Clock::now();
    const auto spaces = verify({0.5}, {"spaces"}, 100);
    const double spaces_secs = seconds_since(t0);
    criterion_alpha(spaces, spaces_secs);

    criterion_operators();
    criterion_scaling();
    criterion_counterexample();
    criterion_spaces(spaces, spaces_secs);
    criterion_reproducibility();
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
