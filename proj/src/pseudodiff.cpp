#include "tfq/pseudodiff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tfq/gaussian.hpp"

namespace tfq {
namespace {

constexpr double pi = std::numbers::pi;

cplx cis(double a) { return {std::cos(a), std::sin(a)}; }

void require_closed_tau(double tau, const char* what) {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw std::invalid_argument(std::string(what) + ": tau must lie in [0,1]");
}

double vec_norm(const std::vector<cplx>& v) {
  double acc = 0.0;
  for (const cplx& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

// k(x_i, t_j) for every row of a symbol sampled on dual_of(grid), t_j on the
// unshifted lattice with the grid's step.
std::vector<cplx> partial_inverse_table(const CField2D& a, const Grid1D& grid) {
  const std::size_t n = grid.size();
  const Grid1D tgrid(n, grid.length(), false);
  const Grid1D xi = make_dual_grid(grid);
  std::vector<cplx> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    CSignal row(xi, std::vector<cplx>(a.row(i).begin(), a.row(i).end()));
    const CSignal k = inverse_fourier(row, tgrid);
    std::copy(k.samples().begin(), k.samples().end(), table.begin() + static_cast<long>(i * n));
  }
  return table;
}

}  // namespace

Symbol Symbol::closed(std::string label, SymbolFn fn, bool real_valued) {
  Symbol s;
  s.label_ = std::move(label);
  s.eval_ = std::move(fn);
  s.real_ = real_valued;
  return s;
}

Symbol Symbol::sampled(std::string label, CField2D samples, bool real_valued) {
  Symbol s;
  s.label_ = std::move(label);
  s.samples_.emplace(std::move(samples));
  s.real_ = real_valued;
  return s;
}

CField2D Symbol::sample_on(const PhaseGrid& pg) const {
  if (eval_) return CField2D::from_function(pg, eval_);
  if (samples_ && samples_->grid() == pg) return *samples_;
  throw std::invalid_argument("symbol '" + label_ + "': grid incompatible");
}

double Symbol::sup_abs(const PhaseGrid& pg) const {
  const CField2D s = sample_on(pg);
  double m = 0.0;
  for (const cplx& v : s.values()) m = std::max(m, std::abs(v));
  return m;
}

Symbol symbol_constant(cplx value) {
  return Symbol::closed("constant", [value](double, double) { return value; }, value.imag() == 0.0);
}

Symbol symbol_gaussian() {
  return Symbol::closed(
      "gaussian", [](double x, double xi) { return cplx(std::exp(-pi * (x * x + xi * xi)), 0.0); },
      true);
}

Symbol symbol_multiplier_x() {
  return Symbol::closed("multiplier-x", [](double x, double) { return cplx(std::exp(-pi * x * x), 0.0); },
                        true);
}

Symbol symbol_multiplier_xi() {
  return Symbol::closed("multiplier-xi",
                        [](double, double xi) { return cplx(std::exp(-pi * xi * xi), 0.0); }, true);
}

Symbol symbol_counterexample() {
  return Symbol::closed(
      "counterexample",
      [](double x, double xi) {
        if (!(x > 0.0 && x <= 1.0)) return cplx{};
        return cplx(std::exp(-pi * xi * xi) / std::sqrt(x), 0.0);
      },
      true);
}

CSignal OperatorMatrix::apply(const CSignal& f) const {
  if (!(f.grid() == grid)) throw std::invalid_argument("OperatorMatrix::apply: grid mismatch");
  const std::size_t n = size();
  std::vector<cplx> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    cplx acc{};
    const cplx* row = entries.data() + m * n;
    for (std::size_t k = 0; k < n; ++k) acc += row[k] * f[k];
    out[m] = acc * quad_weight;
  }
  return CSignal(grid, std::move(out));
}

CSignal OperatorMatrix::apply_adjoint(const CSignal& g) const {
  if (!(g.grid() == grid)) throw std::invalid_argument("OperatorMatrix::apply_adjoint: grid mismatch");
  const std::size_t n = size();
  std::vector<cplx> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    const cplx* row = entries.data() + m * n;
    const cplx gm = g[m];
    for (std::size_t k = 0; k < n; ++k) out[k] += std::conj(row[k]) * gm;
  }
  for (auto& v : out) v *= quad_weight;
  return CSignal(grid, std::move(out));
}

OperatorMatrix OperatorMatrix::scaled(cplx s) const {
  OperatorMatrix out = *this;
  for (auto& v : out.entries) v *= s;
  return out;
}

double OperatorMatrix::frobenius() const { return vec_norm(entries); }

OperatorMatrix build_kernel(const Symbol& a, double tau, const Grid1D& grid) {
  require_closed_tau(tau, "build_kernel");
  const std::size_t n = grid.size();
  const long half = static_cast<long>(n / 2);
  const double h = grid.step();
  const PhaseGrid pg = PhaseGrid::dual_of(grid);
  OperatorMatrix k{grid, tau, std::vector<cplx>(n * n), h};

  if (!a.has_evaluator() || tau == 0.0 || tau == 1.0) {
    // Row table k(u_i, t_j) on the lattice. At the endpoints u is always a grid point,
    // so this path is exact; in between, u is read back by interpolation.
    const CField2D samples = a.sample_on(pg);
    const std::vector<cplx> table = partial_inverse_table(samples, grid);
    std::vector<Resampler> columns;
    const bool interior = tau != 0.0 && tau != 1.0;
    if (interior) {
      columns.reserve(n);
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<cplx> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = table[i * n + j];
        columns.emplace_back(CSignal(grid, std::move(col)));
      }
    }
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t c = 0; c < n; ++c) {
        const long d = static_cast<long>(m) - static_cast<long>(c);
        if (d <= -half || d >= half) continue;
        const std::size_t j = static_cast<std::size_t>(d + half);
        cplx v;
        if (tau == 0.0) v = table[m * n + j];
        else if (tau == 1.0) v = table[c * n + j];
        else v = columns[j]((1.0 - tau) * grid.point(m) + tau * grid.point(c));
        k.entries[m * n + c] = v;
      }
    }
    return k;
  }

  // Closed form: direct ξ-quadrature at every (u, t).
  const Grid1D& xi = pg.xi;
  const double dxi = xi.step();
  std::vector<cplx> e((2 * n) * n);
  for (long d = -half + 1; d < half; ++d)
    for (std::size_t q = 0; q < n; ++q)
      e[static_cast<std::size_t>(d + half) * n + q] =
          cis(2.0 * pi * static_cast<double>(d) * h * xi.point(q)) * dxi;
  const SymbolFn& fn = a.evaluator();
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t c = 0; c < n; ++c) {
      const long d = static_cast<long>(m) - static_cast<long>(c);
      if (d <= -half || d >= half) continue;
      const double u = (1.0 - tau) * grid.point(m) + tau * grid.point(c);
      const cplx* er = e.data() + static_cast<std::size_t>(d + half) * n;
      cplx acc{};
      for (std::size_t q = 0; q < n; ++q) acc += fn(u, xi.point(q)) * er[q];
      k.entries[m * n + c] = acc;
    }
  }
  return k;
}

CSignal op_kohn_nirenberg(const Symbol& a, const CSignal& f) {
  const PhaseGrid pg = PhaseGrid::dual_of(f.grid());
  const CField2D s = a.sample_on(pg);
  const CSignal fh = fourier_transform(f);
  const double dxi = pg.xi.step();
  std::vector<cplx> out(f.size());
  for (std::size_t m = 0; m < out.size(); ++m) {
    const double x = pg.x.point(m);
    cplx acc{};
    for (std::size_t q = 0; q < pg.xi.size(); ++q)
      acc += s(m, q) * fh[q] * cis(2.0 * pi * x * pg.xi.point(q));
    out[m] = acc * dxi;
  }
  return CSignal(f.grid(), std::move(out));
}

std::vector<cplx> op_kohn_nirenberg_at(const Symbol& a, const CSignal& f,
                                       std::span<const double> points) {
  if (!a.has_evaluator()) throw std::invalid_argument("op_kohn_nirenberg_at: closed-form symbol required");
  const CSignal fh = fourier_transform(f);
  const Grid1D& xi = fh.grid();
  const double dxi = xi.step();
  std::vector<cplx> out(points.size());
  for (std::size_t m = 0; m < points.size(); ++m) {
    const double x = points[m];
    cplx acc{};
    for (std::size_t q = 0; q < xi.size(); ++q) {
      const double w = xi.point(q);
      acc += a.evaluator()(x, w) * fh[q] * cis(2.0 * pi * x * w);
    }
    out[m] = acc * dxi;
  }
  return out;
}

cplx anti_kohn_nirenberg_pairing(const Symbol& a, const CSignal& g, const CSignal& f) {
  if (!a.has_evaluator())
    throw std::invalid_argument("anti_kohn_nirenberg_pairing: closed-form symbol required");
  const CSignal fh = fourier_transform(f);
  const Grid1D& xi = fh.grid();
  const Grid1D& yg = g.grid();
  cplx total{};
  for (std::size_t q = 0; q < xi.size(); ++q) {
    const double w = xi.point(q);
    if (fh[q] == cplx{}) continue;
    cplx acc{};
    for (std::size_t n = 0; n < yg.size(); ++n) {
      if (g[n] == cplx{}) continue;
      const double y = yg.point(n);
      acc += a.evaluator()(y, w) * g[n] * cis(-2.0 * pi * y * w);
    }
    total += acc * yg.step() * std::conj(fh[q]);
  }
  return total * xi.step();
}

CSignal op_weyl(const Symbol& a, const CSignal& f) { return build_kernel(a, 0.5, f.grid()).apply(f); }

double weak_pairing_residual(const Symbol& a, double tau, const CSignal& f, const CSignal& g) {
  const PhaseGrid pg = PhaseGrid::dual_of(f.grid());
  const OperatorMatrix k = build_kernel(a, tau, f.grid());
  const cplx lhs = inner_product(k.apply(f), g);
  const cplx rhs = inner_product(a.sample_on(pg), tau_wigner(g, f, tau, pg));
  const double scale = f.l2_norm() * g.l2_norm() * a.sup_abs(pg);
  if (scale == 0.0) return std::abs(lhs - rhs);
  return std::abs(lhs - rhs) / scale;
}

Symbol convert_symbol(const Symbol& a, double tau1, double tau2, const PhaseGrid& pg) {
  require_closed_tau(tau1, "convert_symbol");
  require_closed_tau(tau2, "convert_symbol");
  CField2D spec = fourier_transform_2d(a.sample_on(pg));
  const PhaseGrid& sg = spec.grid();
  const double dt = tau2 - tau1;
  for (std::size_t i = 0; i < spec.rows(); ++i) {
    const double z1 = sg.x.point(i);
    for (std::size_t j = 0; j < spec.cols(); ++j)
      spec(i, j) *= cis(-2.0 * pi * dt * z1 * sg.xi.point(j));
  }
  return Symbol::sampled(a.label() + "->tau" + std::to_string(tau2),
                         inverse_fourier_2d(spec, pg), false);
}

cplx chirp_fourier_closed(double t, double zeta1, double zeta2) {
  if (t == 0.0) throw std::invalid_argument("chirp_fourier_closed: t must be nonzero");
  return cis(-2.0 * pi * zeta1 * zeta2 / t) / t;
}

double adjoint_residual(const Symbol& a, const Grid1D& grid) {
  if (!a.real_valued()) throw std::invalid_argument("adjoint_residual: real-valued symbol required");
  const OperatorMatrix k0 = build_kernel(a, 0.0, grid);
  const OperatorMatrix k1 = build_kernel(a, 1.0, grid);
  const std::size_t n = grid.size();
  double diff = 0.0;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t c = 0; c < n; ++c) diff += std::norm(k1(m, c) - std::conj(k0(c, m)));
  const double ref = k0.frobenius();
  return ref == 0.0 ? std::sqrt(diff) : std::sqrt(diff) / ref;
}

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(splitmix64(seed, counter) >> 11) * 0x1.0p-53;
}

NormEstimate l2_operator_norm(const OperatorMatrix& k, double rel_tol, int max_iter) {
  const std::size_t n = k.size();
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = cplx(uniform01(7, 2 * i) - 0.5, uniform01(7, 2 * i + 1) - 0.5);
  NormEstimate est;
  double nv = vec_norm(v);
  for (auto& x : v) x /= nv;
  double prev = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    const CSignal av = k.apply(CSignal(k.grid, v));
    const CSignal w = k.apply_adjoint(av);
    cplx rq{};
    for (std::size_t i = 0; i < n; ++i) rq += w[i] * std::conj(v[i]);
    const double sigma = std::sqrt(std::max(rq.real(), 0.0));
    est.value = sigma;
    est.iterations = it;
    const double nw = vec_norm(std::vector<cplx>(w.samples().begin(), w.samples().end()));
    if (nw == 0.0) {
      est.value = 0.0;
      est.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
    if (prev >= 0.0 && std::abs(sigma - prev) <= rel_tol * sigma) {
      est.converged = true;
      break;
    }
    prev = sigma;
  }
  est.top_vector = v;
  return est;
}

CSignal random_probe(const Grid1D& grid, std::uint64_t seed, std::uint64_t index) {
  struct Term {
    cplx c;
    double x, omega, s;
  };
  std::vector<Term> terms;
  for (std::uint64_t t = 0; t < 4; ++t) {
    const std::uint64_t base = index * 64 + t * 8;
    terms.push_back({cplx(2.0 * uniform01(seed, base) - 1.0, 2.0 * uniform01(seed, base + 1) - 1.0),
                     6.0 * uniform01(seed, base + 2) - 3.0, 6.0 * uniform01(seed, base + 3) - 3.0,
                     0.5 + 1.5 * uniform01(seed, base + 4)});
  }
  return signal_from(grid, [terms](double t) {
    cplx acc{};
    for (const Term& p : terms) {
      const double d = (t - p.x) / p.s;
      acc += p.c * std::exp(cplx(-pi * d * d, 2.0 * pi * p.omega * t));
    }
    return acc;
  });
}

NormLowerBound modulation_operator_norm_lower(const OperatorMatrix& k, double r1, double r2,
                                              const Weight& m, const ProbeConfig& probes) {
  const Grid1D& grid = k.grid;
  const CSignal window = gaussian_signal(grid);
  NormLowerBound best;
  auto consider = [&](const CSignal& f, const std::string& label) {
    const double den = modulation_norm(f, window, r1, r2, m);
    if (!(den > 0.0)) return;
    const double num = modulation_norm(k.apply(f), window, r1, r2, m);
    ++best.probes_used;
    if (num / den > best.value || best.best_probe.empty()) {
      best.value = std::max(best.value, num / den);
      best.best_probe = label;
    }
  };
  const CSignal phi = gaussian_signal(grid);
  for (int j = -probes.lattice_extent; j <= probes.lattice_extent; ++j)
    for (int q = -probes.lattice_extent; q <= probes.lattice_extent; ++q)
      consider(tf_shift(phi, {static_cast<double>(j), static_cast<double>(q)}),
               "lattice(" + std::to_string(j) + "," + std::to_string(q) + ")");
  for (int i = 0; i < probes.n_random; ++i)
    consider(random_probe(grid, probes.seed, static_cast<std::uint64_t>(i)),
             "random(" + std::to_string(i) + ")");
  if (probes.power_probe) {
    const NormEstimate est = l2_operator_norm(k);
    consider(CSignal(grid, est.top_vector), "power");
  }
  return best;
}

}  // namespace tfq
