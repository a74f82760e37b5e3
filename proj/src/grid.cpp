#include "tfq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tfq {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_same(const Grid1D& a, const Grid1D& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace

Grid1D::Grid1D(std::size_t n_samples, double length, bool shifted)
    : n_(n_samples), length_(length), shifted_(shifted) {
  if (!is_power_of_two(n_samples))
    throw std::invalid_argument("Grid1D: sample count must be a power of two");
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("Grid1D: length must be positive and finite");
}

std::vector<double> Grid1D::points() const {
  std::vector<double> p(n_);
  for (std::size_t n = 0; n < n_; ++n) p[n] = point(n);
  return p;
}

std::optional<std::size_t> Grid1D::index_of(double x) const {
  double pos = x / step() + static_cast<double>(n_ / 2) - shift();
  double r = std::round(pos);
  if (std::abs(pos - r) > 1e-9 || r < 0.0 || r >= static_cast<double>(n_)) return std::nullopt;
  return static_cast<std::size_t>(r);
}

Grid1D make_dual_grid(const Grid1D& g) {
  return Grid1D(g.size(), 1.0 / g.step(), false);
}

CSignal::CSignal(Grid1D grid, std::vector<cplx> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size())
    throw std::invalid_argument("CSignal: sample count does not match grid");
}

CSignal CSignal::from_function(Grid1D grid, SignalFn fn) {
  std::vector<cplx> s(grid.size());
  for (std::size_t n = 0; n < s.size(); ++n) s[n] = fn(grid.point(n));
  CSignal out(grid, std::move(s));
  out.eval_ = std::move(fn);
  return out;
}

double CSignal::l2_norm() const {
  double acc = 0.0;
  for (const cplx& v : samples_) acc += std::norm(v);
  return std::sqrt(acc * grid_.step());
}

CField2D::CField2D(PhaseGrid grid) : grid_(grid), values_(grid.x.size() * grid.xi.size()) {}

CField2D::CField2D(PhaseGrid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.x.size() * grid_.xi.size())
    throw std::invalid_argument("CField2D: value count does not match grid");
}

CField2D CField2D::from_function(PhaseGrid grid, const std::function<cplx(double, double)>& fn) {
  CField2D out(grid);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    const double x = grid.x.point(i);
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = fn(x, grid.xi.point(j));
  }
  return out;
}

cplx inner_product(const CSignal& f, const CSignal& g) {
  require_same(f.grid(), g.grid(), "inner_product");
  cplx acc{};
  for (std::size_t n = 0; n < f.size(); ++n) acc += f[n] * std::conj(g[n]);
  return acc * f.grid().step();
}

cplx inner_product(const CField2D& f, const CField2D& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("inner_product: grid mismatch");
  cplx acc{};
  auto a = f.values();
  auto b = g.values();
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
  return acc * f.grid().cell_area();
}

CSignal fourier_transform(const CSignal& f) {
  const Grid1D& g = f.grid();
  const double half = static_cast<double>(g.size() / 2);
  std::vector<cplx> out(g.size());
  fft::offset_dft(f.samples(), out, fft::Direction::Forward, g.shift() - half, -half, g.step());
  return CSignal(make_dual_grid(g), std::move(out));
}

CSignal inverse_fourier(const CSignal& spectrum) {
  return inverse_fourier(spectrum, make_dual_grid(spectrum.grid()));
}

CSignal inverse_fourier(const CSignal& spectrum, const Grid1D& target) {
  const Grid1D& fg = spectrum.grid();
  if (fg.shifted() || !(make_dual_grid(target) == fg))
    throw std::invalid_argument("inverse_fourier: spectrum is not on the dual of the target grid");
  const double half = static_cast<double>(fg.size() / 2);
  std::vector<cplx> out(fg.size());
  fft::offset_dft(spectrum.samples(), out, fft::Direction::Backward, -half, target.shift() - half,
                  fg.step());
  return CSignal(target, std::move(out));
}

namespace {

// Applies a centered offset DFT along one axis of a row-major field.
void transform_axis(std::vector<cplx>& v, std::size_t rows, std::size_t cols, int axis,
                    fft::Direction dir, double in_off, double out_off, double scale) {
  const std::size_t n = axis == 0 ? rows : cols;
  const std::size_t m = axis == 0 ? cols : rows;
  std::vector<cplx> in(n), out(n);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t k = 0; k < n; ++k) in[k] = axis == 0 ? v[k * cols + a] : v[a * cols + k];
    fft::offset_dft(in, out, dir, in_off, out_off, scale);
    for (std::size_t k = 0; k < n; ++k) (axis == 0 ? v[k * cols + a] : v[a * cols + k]) = out[k];
  }
}

}  // namespace

CField2D fourier_transform_2d(const CField2D& f) {
  const PhaseGrid& g = f.grid();
  const PhaseGrid out_grid{make_dual_grid(g.x), make_dual_grid(g.xi)};
  std::vector<cplx> v(f.values().begin(), f.values().end());
  const double hx = static_cast<double>(g.x.size() / 2);
  const double hw = static_cast<double>(g.xi.size() / 2);
  transform_axis(v, f.rows(), f.cols(), 0, fft::Direction::Forward, g.x.shift() - hx, -hx,
                 g.x.step());
  transform_axis(v, f.rows(), f.cols(), 1, fft::Direction::Forward, g.xi.shift() - hw, -hw,
                 g.xi.step());
  return CField2D(out_grid, std::move(v));
}

CField2D inverse_fourier_2d(const CField2D& spectrum, const PhaseGrid& target) {
  const PhaseGrid& g = spectrum.grid();
  if (g.x.shifted() || g.xi.shifted() || !(make_dual_grid(target.x) == g.x) ||
      !(make_dual_grid(target.xi) == g.xi))
    throw std::invalid_argument("inverse_fourier_2d: spectrum is not on the dual of the target");
  std::vector<cplx> v(spectrum.values().begin(), spectrum.values().end());
  const double hx = static_cast<double>(g.x.size() / 2);
  const double hw = static_cast<double>(g.xi.size() / 2);
  transform_axis(v, spectrum.rows(), spectrum.cols(), 0, fft::Direction::Backward, -hx,
                 target.x.shift() - hx, g.x.step());
  transform_axis(v, spectrum.rows(), spectrum.cols(), 1, fft::Direction::Backward, -hw,
                 target.xi.shift() - hw, g.xi.step());
  return CField2D(target, std::move(v));
}

Resampler::Resampler(const CSignal& f, int oversample)
    : grid_(f.grid()), samples_(f.samples().begin(), f.samples().end()), oversample_(oversample) {
  if (oversample < 1) throw std::invalid_argument("Resampler: oversample must be >= 1");
  const std::size_t n = samples_.size();
  const std::size_t m = n * static_cast<std::size_t>(oversample);
  std::vector<cplx> spec(samples_);
  fft::transform(spec, fft::Direction::Forward);
  fine_.assign(m, cplx{});
  if (n == 1) {
    std::fill(fine_.begin(), fine_.end(), samples_[0]);
    return;
  }
  const std::size_t h = n / 2;
  for (std::size_t k = 0; k < h; ++k) fine_[k] = spec[k];
  for (std::size_t k = h + 1; k < n; ++k) fine_[m - n + k] = spec[k];
  // The Nyquist bin is shared evenly between +N/2 and -N/2 so real data stays real.
  if (m > n) {
    fine_[h] = 0.5 * spec[h];
    fine_[m - h] = 0.5 * spec[h];
  } else {
    fine_[h] = spec[h];
  }
  fft::transform(fine_, fft::Direction::Backward);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& v : fine_) v *= scale;
}

cplx Resampler::operator()(double x, bool* outside) const {
  if (!grid_.in_window(x)) {
    if (outside) *outside = true;
    return {};
  }
  if (auto idx = grid_.index_of(x)) return samples_[*idx];

  constexpr int taps = 8;
  const long m = static_cast<long>(fine_.size());
  const double hf = grid_.step() / oversample_;
  const double pos = (x - grid_.point(0)) / hf;
  const long base = static_cast<long>(std::floor(pos)) - taps / 2 + 1;
  const double frac = pos - static_cast<double>(base);

  // Lagrange basis on nodes 0..taps-1 evaluated at frac.
  double prod = 1.0;
  double d[taps];
  for (int j = 0; j < taps; ++j) {
    d[j] = frac - j;
    if (d[j] == 0.0) return fine_[static_cast<std::size_t>(((base + j) % m + m) % m)];
    prod *= d[j];
  }
  static const double w[taps] = {-1.0 / 5040, 1.0 / 720, -1.0 / 240, 1.0 / 144,
                                 -1.0 / 144,  1.0 / 240, -1.0 / 720, 1.0 / 5040};
  cplx acc{};
  for (int j = 0; j < taps; ++j) {
    const std::size_t idx = static_cast<std::size_t>(((base + j) % m + m) % m);
    acc += fine_[idx] * (w[j] / d[j]);
  }
  return acc * prod;
}

SignalSampler::SignalSampler(const CSignal& f) : eval_(f.evaluator()) {
  if (!eval_) resampler_.emplace(f);
}

cplx SignalSampler::operator()(double x) const {
  if (eval_) return eval_(x);
  return (*resampler_)(x);
}

ResampleResult resample(const CSignal& f, std::span<const double> points) {
  ResampleResult r;
  r.values.resize(points.size());
  std::optional<Resampler> rs;
  if (!f.has_evaluator()) rs.emplace(f);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i];
    if (!f.grid().in_window(x)) {
      r.out_of_window = true;
      continue;
    }
    r.values[i] = f.has_evaluator() ? f.evaluator()(x) : (*rs)(x);
  }
  return r;
}

}  // namespace tfq
