#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tfq/spaces.hpp"

namespace tfq {

using SymbolFn = std::function<cplx(double, double)>;

/// Symbol a(x,ξ), given in closed form, as samples on a PhaseGrid, or both.
class Symbol {
 public:
  static Symbol closed(std::string label, SymbolFn fn, bool real_valued);
  static Symbol sampled(std::string label, CField2D samples, bool real_valued);

  const std::string& label() const noexcept { return label_; }
  bool real_valued() const noexcept { return real_; }
  bool has_evaluator() const noexcept { return static_cast<bool>(eval_); }
  const SymbolFn& evaluator() const noexcept { return eval_; }
  const std::optional<CField2D>& samples() const noexcept { return samples_; }

  /// Samples on pg: the evaluator if present, otherwise the stored samples when
  /// they already live on pg. Throws std::invalid_argument otherwise.
  CField2D sample_on(const PhaseGrid& pg) const;
  /// sup |a| over pg.
  double sup_abs(const PhaseGrid& pg) const;

 private:
  std::string label_;
  SymbolFn eval_;
  std::optional<CField2D> samples_;
  bool real_ = false;
};

Symbol symbol_constant(cplx value);
/// e^{-π(x²+ξ²)}.
Symbol symbol_gaussian();
/// σ(x) = e^{-πx²} (multiplication operator).
Symbol symbol_multiplier_x();
/// σ(ξ) = e^{-πξ²} (Fourier multiplier).
Symbol symbol_multiplier_xi();
/// x^{-1/2} χ_{(0,1]}(x) e^{-πξ²}: bounded at neither endpoint quantization.
Symbol symbol_counterexample();

/// Dense discretization of Op_τ(a): apply(f) = quad_weight · entries · f.
struct OperatorMatrix {
  Grid1D grid;
  double tau = 0.0;
  std::vector<cplx> entries;  // row-major N×N
  double quad_weight = 0.0;

  std::size_t size() const noexcept { return grid.size(); }
  cplx operator()(std::size_t m, std::size_t n) const { return entries[m * size() + n]; }
  CSignal apply(const CSignal& f) const;
  /// h · K^H g.
  CSignal apply_adjoint(const CSignal& g) const;
  OperatorMatrix scaled(cplx s) const;
  double frobenius() const;
};

/// K(x_m, y_n) = k((1-τ)x_m + τy_n, x_m - y_n) with k(u,t) = ∫ a(u,ξ) e^{2πitξ} dξ.
///
/// The ξ-integral runs over dual(grid). Closed-form symbols are integrated directly
/// at every (u,t). Sampled symbols must live on PhaseGrid::dual_of(grid): each row is
/// inverse transformed to k(x_m, t_j) and the u-direction is read back by band-limited
/// interpolation. Entries with |t| ≥ L/2 wrap around the periodic ξ-sum and are zeroed.
OperatorMatrix build_kernel(const Symbol& a, double tau, const Grid1D& grid);

/// Kohn-Nirenberg form ∫ a(x,ξ) f̂(ξ) e^{2πixξ} dξ on f's grid.
CSignal op_kohn_nirenberg(const Symbol& a, const CSignal& f);
/// Same formula evaluated at arbitrary points (a must have an evaluator).
std::vector<cplx> op_kohn_nirenberg_at(const Symbol& a, const CSignal& f,
                                       std::span<const double> points);

/// ⟨Op₁(a)g, f⟩ = ∫∫ a(y,ξ) g(y) e^{-2πiyξ} conj(f̂(ξ)) dy dξ with the y-integral on g's
/// grid and ξ on the dual of f's grid (a must have an evaluator).
cplx anti_kohn_nirenberg_pairing(const Symbol& a, const CSignal& g, const CSignal& f);

/// Op_{1/2}(a) f.
CSignal op_weyl(const Symbol& a, const CSignal& f);

/// |⟨Op_τ(a)f, g⟩ - ⟨a, W_τ(g,f)⟩| / (‖f‖ ‖g‖ sup|a|), the two pairings computed by
/// the kernel matrix and by phase-space quadrature on PhaseGrid::dual_of(f.grid()).
double weak_pairing_residual(const Symbol& a, double tau, const CSignal& f, const CSignal& g);

/// a₂ with Op_{τ₂}(a₂) = Op_{τ₁}(a): â₂(ζ₁,ζ₂) = e^{-2πi(τ₂-τ₁)ζ₁ζ₂} â₁(ζ₁,ζ₂), on pg.
Symbol convert_symbol(const Symbol& a, double tau1, double tau2, const PhaseGrid& pg);

/// ℱH_t(ζ₁,ζ₂) = t^{-1} e^{-2πiζ₁ζ₂/t} for H_t(x,ξ) = e^{2πitxξ}.
cplx chirp_fourier_closed(double t, double zeta1, double zeta2);

/// ‖K₁ - K₀^H‖_F / ‖K₀‖_F with K_τ = build_kernel(a, τ, grid). Real symbols only.
double adjoint_residual(const Symbol& a, const Grid1D& grid);

struct NormEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<cplx> top_vector;  // right singular vector at the last iterate
};

/// Largest singular value of f ↦ apply(f) by power iteration on A^H A, stopping at a
/// relative change below rel_tol or after max_iter iterations.
NormEstimate l2_operator_norm(const OperatorMatrix& k, double rel_tol = 1e-10, int max_iter = 500);

/// SplitMix64 keyed by (seed, counter): a stateless generator so every probe is
/// reproducible on its own.
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter);
/// Uniform in [0,1) from the top 53 bits of splitmix64(seed, counter).
double uniform01(std::uint64_t seed, std::uint64_t counter);

struct ProbeConfig {
  int lattice_extent = 2;       // shifts (j, k) for |j|,|k| ≤ extent, unit spacing
  int n_random = 16;            // sums of random time-frequency shifted, dilated Gaussians
  std::uint64_t seed = 20240601;
  bool power_probe = true;      // add the top right singular vector as one more probe
};

struct NormLowerBound {
  double value = 0.0;
  std::size_t probes_used = 0;
  std::string best_probe;
};

/// max over the probe family of ‖Af‖_{M^{r₁,r₂}_m} / ‖f‖_{M^{r₁,r₂}_m}, window φ. Every
/// probe is a genuine input signal, so the value is a lower bound for the operator norm
/// at grid resolution. Probes with zero norm are skipped.
NormLowerBound modulation_operator_norm_lower(const OperatorMatrix& k, double r1, double r2,
                                              const Weight& m, const ProbeConfig& probes);

/// The individual random probe with index i (0-based).
CSignal random_probe(const Grid1D& grid, std::uint64_t seed, std::uint64_t index);

}  // namespace tfq
