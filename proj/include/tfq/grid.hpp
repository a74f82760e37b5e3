#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tfq/fft.hpp"

namespace tfq {

/// Symmetric sampling lattice over [-L/2, L/2).
///
/// Points are x_n = (n - N/2 + shift) * step with step = L / N and shift equal
/// to 0, or 1/2 for the shifted mode used when no sample may sit at x = 0.
/// N must be a power of two.
class Grid1D {
 public:
  Grid1D(std::size_t n_samples, double length, bool shifted = false);

  std::size_t size() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double half_width() const noexcept { return 0.5 * length_; }
  double step() const noexcept { return length_ / static_cast<double>(n_); }
  bool shifted() const noexcept { return shifted_; }
  /// Shift of the lattice in units of the step (0 or 1/2).
  double shift() const noexcept { return shifted_ ? 0.5 : 0.0; }

  double point(std::size_t n) const noexcept {
    return (static_cast<double>(n) - static_cast<double>(n_ / 2) + shift()) * step();
  }
  std::vector<double> points() const;

  /// Index of the sample at x if x lies on the lattice (to 1e-9 of a step).
  std::optional<std::size_t> index_of(double x) const;
  /// True for x in [-L/2, L/2).
  bool in_window(double x) const noexcept { return x >= -half_width() && x < half_width(); }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  std::size_t n_;
  double length_;
  bool shifted_;
};

/// Frequency grid with step 1/(g.step * N), same N, centered and unshifted.
Grid1D make_dual_grid(const Grid1D& g);

using SignalFn = std::function<cplx(double)>;

/// Complex sampled signal. When built from a closed form, the evaluator is kept
/// for exact off-grid evaluation and samples[n] == evaluator(x_n).
class CSignal {
 public:
  CSignal(Grid1D grid, std::vector<cplx> samples);
  static CSignal from_function(Grid1D grid, SignalFn fn);

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const cplx> samples() const noexcept { return samples_; }
  cplx operator[](std::size_t n) const { return samples_[n]; }
  std::size_t size() const noexcept { return samples_.size(); }

  bool has_evaluator() const noexcept { return static_cast<bool>(eval_); }
  const SignalFn& evaluator() const noexcept { return eval_; }

  /// Drops the evaluator; the result only knows its samples.
  CSignal sampled_only() const { return CSignal(grid_, samples_); }
  double l2_norm() const;

 private:
  Grid1D grid_;
  std::vector<cplx> samples_;
  SignalFn eval_;
};

/// Pair of lattices for the time-frequency plane: rows are x, columns are ξ.
struct PhaseGrid {
  Grid1D x;
  Grid1D xi;

  /// (g, dual(g)): the grid the FFT-based transforms produce natively.
  static PhaseGrid dual_of(const Grid1D& g) { return {g, make_dual_grid(g)}; }
  double cell_area() const noexcept { return x.step() * xi.step(); }
  friend bool operator==(const PhaseGrid&, const PhaseGrid&) = default;
};

/// Complex field on a PhaseGrid, row-major with x as the slow index.
class CField2D {
 public:
  explicit CField2D(PhaseGrid grid);
  CField2D(PhaseGrid grid, std::vector<cplx> values);

  const PhaseGrid& grid() const noexcept { return grid_; }
  std::size_t rows() const noexcept { return grid_.x.size(); }
  std::size_t cols() const noexcept { return grid_.xi.size(); }

  cplx& operator()(std::size_t i, std::size_t j) { return values_[i * cols() + j]; }
  cplx operator()(std::size_t i, std::size_t j) const { return values_[i * cols() + j]; }
  std::span<cplx> row(std::size_t i) { return {values_.data() + i * cols(), cols()}; }
  std::span<const cplx> row(std::size_t i) const { return {values_.data() + i * cols(), cols()}; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }

  /// Samples fn(x_i, ξ_j) on the grid.
  static CField2D from_function(PhaseGrid grid, const std::function<cplx(double, double)>& fn);

 private:
  PhaseGrid grid_;
  std::vector<cplx> values_;
};

/// step * Σ f_n conj(g_n); throws std::invalid_argument on grid mismatch.
cplx inner_product(const CSignal& f, const CSignal& g);

/// Phase-space inner product Σ F conj(G) dx dξ on a common PhaseGrid.
cplx inner_product(const CField2D& f, const CField2D& g);

/// Samples of ℱf(ξ) = ∫ f(x) e^{-2πi xξ} dx on the dual grid.
CSignal fourier_transform(const CSignal& f);

/// Inverse of fourier_transform. The target grid defaults to dual(F.grid), which
/// is unshifted; pass a shifted target whose dual is F.grid to land on it.
CSignal inverse_fourier(const CSignal& spectrum);
CSignal inverse_fourier(const CSignal& spectrum, const Grid1D& target);

/// ℱF(ζ₁,ζ₂) = ∫∫ F(x,ξ) e^{-2πi(xζ₁+ξζ₂)} dx dξ on (dual(x), dual(ξ)).
CField2D fourier_transform_2d(const CField2D& f);

/// Inverse of fourier_transform_2d onto `target`, whose axis duals must match F's grid.
CField2D inverse_fourier_2d(const CField2D& spectrum, const PhaseGrid& target);

/// Band-limited interpolation of a sampled signal: the periodic trigonometric
/// interpolant is tabulated on an `oversample`-times finer lattice by FFT
/// zero-padding and read back with 8-point Lagrange interpolation. Grid points
/// return the stored sample exactly; points outside the window give zero.
class Resampler {
 public:
  explicit Resampler(const CSignal& f, int oversample = 8);
  cplx operator()(double x, bool* outside = nullptr) const;

 private:
  Grid1D grid_;
  std::vector<cplx> samples_;
  std::vector<cplx> fine_;
  int oversample_;
};

/// Point evaluation that prefers the closed form: evaluator anywhere when present,
/// otherwise a Resampler.
class SignalSampler {
 public:
  explicit SignalSampler(const CSignal& f);
  cplx operator()(double x) const;

 private:
  SignalFn eval_;
  std::optional<Resampler> resampler_;
};

struct ResampleResult {
  std::vector<cplx> values;
  bool out_of_window = false;
};

/// Evaluates f at arbitrary points: exact via the evaluator when present, band-limited
/// interpolation otherwise. Points outside [-L/2, L/2) yield zero and raise the flag.
ResampleResult resample(const CSignal& f, std::span<const double> points);

}  // namespace tfq
