#include "tfq/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tfq/gaussian.hpp"

namespace tfq {
namespace {

constexpr double pi = std::numbers::pi;

cplx cis(double a) { return {std::cos(a), std::sin(a)}; }

std::string tagged(const std::string& name, double tau) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", tau);
  return name + "[tau=" + buf + "]";
}

bool interior(double tau) { return tau > 0.0 && tau < 1.0; }

struct Stream {
  std::uint64_t seed;
  std::uint64_t counter = 0;
  double next() { return uniform01(seed, counter++); }
  double in(double a, double b) { return a + (b - a) * next(); }
  long integer(long lo, long hi) {
    return lo + static_cast<long>(next() * static_cast<double>(hi - lo + 1));
  }
};

class Checks {
 public:
  explicit Checks(RunSummary& s) : s_(s) {}
  void add(const std::string& name, double value, double threshold) {
    if (!names_.insert(name).second) throw std::logic_error("duplicate check name: " + name);
    s_.checks.push_back({name, value, threshold, value <= threshold});
  }

 private:
  RunSummary& s_;
  std::set<std::string> names_;
};

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double rel_l2(const CSignal& a, const CSignal& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

double spread(const std::vector<double>& v) {
  if (v.empty()) return 1.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

CSignal scaled_sum(const Grid1D& g, std::vector<std::pair<int, double>> terms) {
  return signal_from(g, [terms](double t) {
    cplx acc{};
    for (const auto& [n, c] : terms) acc += c * hermite_value(n, t);
    return acc;
  });
}

CField2D window_field(const PhaseGrid& pg) {
  return CField2D::from_function(pg, [](double x, double xi) { return gen_gaussian({1, 1, 0}, x, xi); });
}

// Lattice-aligned z with |z| ≲ 1 and ζ uniform in [-1,1]².
std::pair<TFShift, TFShift> random_point(Stream& rng, const PhaseGrid& pg) {
  const long kx = std::max(1L, std::lround(1.0 / pg.x.step()));
  const long kw = std::max(1L, std::lround(1.0 / pg.xi.step()));
  const TFShift z{static_cast<double>(rng.integer(-kx, kx)) * pg.x.step(),
                  static_cast<double>(rng.integer(-kw, kw)) * pg.xi.step()};
  const TFShift zeta{rng.in(-1.0, 1.0), rng.in(-1.0, 1.0)};
  return {z, zeta};
}

LatticeField abs_field(const CField2D& f) {
  LatticeField out = LatticeField::from_field(f);
  for (cplx& v : out.data) v = std::abs(v);
  return out;
}

LatticeField random_field(Stream& rng, std::vector<std::size_t> dims, std::vector<double> steps) {
  std::vector<double> origin;
  for (std::size_t d : dims) origin.push_back(static_cast<double>(rng.integer(0, static_cast<long>(d) - 1)));
  LatticeField f = LatticeField::zeros(dims, std::move(steps), std::move(origin));
  for (cplx& v : f.data) v = cplx(rng.in(-1.0, 1.0), rng.in(-1.0, 1.0));
  return f;
}

// Exponent pair (p1, p2) with 1/p1 + 1/p2 ≥ 1, and the resulting r.
std::array<double, 3> young_triple(Stream& rng) {
  static const double choices[] = {1.0, 1.5, 2.0, 3.0, 4.0, inf};
  for (;;) {
    const double p1 = choices[rng.integer(0, 5)];
    const double p2 = choices[rng.integer(0, 5)];
    const double s = 1.0 / p1 + 1.0 / p2 - 1.0;
    if (s < 0.0) continue;
    return {p1, p2, s == 0.0 ? inf : 1.0 / s};
  }
}

double violation(double lhs, double rhs) {
  return rhs > 0.0 ? std::max(0.0, (lhs - rhs) / rhs) : std::max(0.0, lhs);
}

// ---------------------------------------------------------------- grid

void verify_grid(const ExperimentConfig& cfg, Checks& c) {
  const Grid1D g(cfg.grid_n, cfg.grid_l);
  std::vector<CSignal> set;
  for (const char* n : {"gaussian", "hermite1", "hermite2", "hermite3", "shifted-gaussian", "chirp-gaussian"})
    set.push_back(named_signal(n, g));
  std::vector<CSignal> hats;
  for (const auto& f : set) hats.push_back(fourier_transform(f));

  double parseval = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = 0; j < set.size(); ++j)
      parseval = std::max(parseval, std::abs(inner_product(set[i], set[j]) - inner_product(hats[i], hats[j])));
  c.add("grid.parseval", parseval, cfg.tol("grid.parseval"));

  double refl = 0.0, exact = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const CSignal ff = fourier_transform(hats[i]);
    for (std::size_t n = 0; n < g.size(); ++n)
      refl = std::max(refl, std::abs(ff[n] - set[i].evaluator()(-g.point(n))));
    const auto pts = g.points();
    const ResampleResult r = resample(set[i].sampled_only(), pts);
    exact = std::max(exact, max_abs_diff(r.values, set[i].samples()));
  }
  c.add("grid.reflection", refl, cfg.tol("grid.reflection"));
  c.add("grid.resample_on_lattice", exact, 0.0);
}

// ---------------------------------------------------------------- stft

void verify_stft(const ExperimentConfig& cfg, Checks& c) {
  const Grid1D g(cfg.grid_n, cfg.grid_l);
  const PhaseGrid pg = PhaseGrid::dual_of(g);
  const CSignal phi = gaussian_signal(g);
  const CSignal h1 = hermite_signal(1, g);
  const CSignal h2 = hermite_signal(2, g);
  const CSignal sg = named_signal("shifted-gaussian", g);

  {
    const CField2D v = stft(phi, phi, pg);
    double err = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i)
      for (std::size_t j = 0; j < v.cols(); ++j) {
        const double x = pg.x.point(i), w = pg.xi.point(j);
        const cplx ref = std::exp(-pi * (x * x + w * w) / 2.0) * cis(-pi * x * w) / std::sqrt(2.0);
        err = std::max(err, std::abs(v(i, j) - ref));
      }
    c.add("stft.gaussian_closed", err, cfg.tol("identity.stft_gaussian"));
  }
  {
    const cplx lhs = inner_product(stft(h1, phi, pg), stft(sg, h2, pg));
    const cplx rhs = inner_product(h1, sg) * std::conj(inner_product(phi, h2));
    const double scale = h1.l2_norm() * sg.l2_norm() * phi.l2_norm() * h2.l2_norm();
    c.add("stft.orthogonality", std::abs(lhs - rhs) / scale, cfg.tol("identity.orthogonality_rel"));
  }
  {
    const CField2D v = stft(h1, sg, pg);
    const CSignal fh = fourier_transform(h1);
    const CSignal gh = fourier_transform(sg);
    const CField2D vh = stft(fh, gh, PhaseGrid::dual_of(fh.grid()));
    const Grid1D& back = vh.grid().xi;
    double err = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
      const auto k = back.index_of(-pg.x.point(i));
      if (!k) continue;
      for (std::size_t j = 0; j < v.cols(); ++j) {
        const double x = pg.x.point(i), w = pg.xi.point(j);
        err = std::max(err, std::abs(v(i, j) - cis(-2.0 * pi * x * w) * vh(j, *k)));
      }
    }
    c.add("stft.fundamental_identity", err, cfg.tol("identity.fundamental"));
  }
  {
    const TFShift w{0.7, -0.3};
    const CField2D v = stft(h1, phi, pg);
    const CField2D vw = stft(tf_shift(h1, w), tf_shift(phi, w), pg);
    double err = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i)
      for (std::size_t j = 0; j < v.cols(); ++j) {
        const cplx ref = cis(2.0 * pi * (w.omega * pg.x.point(i) - pg.xi.point(j) * w.x)) * v(i, j);
        err = std::max(err, std::abs(vw(i, j) - ref));
      }
    c.add("stft.shift_formula", err, cfg.tol("identity.stft_shift"));
  }
  {
    // |V_{g0} f| ≤ |⟨γ,g⟩|^{-1} (|V_g f| ∗ |V_{g0} γ|) with f=h1, g=φ, g0=h2, γ=π(1,½)φ.
    const LatticeField vgf = abs_field(stft(h1, phi, pg));
    const LatticeField vg0 = abs_field(stft(sg, h2, pg));
    const CField2D lhs = stft(h1, h2, pg);
    const LatticeField conv = linear_convolution(vgf, vg0);
    const double denom = std::abs(inner_product(sg, phi));
    const long o0 = std::lround(conv.origin[0] - vgf.origin[0]);
    const long o1 = std::lround(conv.origin[1] - vgf.origin[1]);
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.rows(); ++i)
      for (std::size_t j = 0; j < lhs.cols(); ++j) {
        const std::size_t idx[2] = {i + static_cast<std::size_t>(o0), j + static_cast<std::size_t>(o1)};
        const double rhs = conv.data[conv.flat(idx)].real() / denom;
        worst = std::max(worst, std::abs(lhs(i, j)) - rhs);
      }
    c.add("stft.change_of_window", worst, cfg.tol("identity.change_of_window_slack"));
  }
}

// ---------------------------------------------------------------- wigner

void verify_wigner(const ExperimentConfig& cfg, Checks& c) {
  const Grid1D g(cfg.grid_n, cfg.grid_l);
  const PhaseGrid pg = PhaseGrid::dual_of(g);
  const CSignal phi = gaussian_signal(g);
  const CSignal h1 = hermite_signal(1, g);
  const CSignal h2 = hermite_signal(2, g);
  const CSignal sg = named_signal("shifted-gaussian", g);
  const CSignal ch = named_signal("chirp-gaussian", g);
  const CSignal sg_hat = fourier_transform(sg);
  const PhaseGrid pg_hat = PhaseGrid::dual_of(sg_hat.grid());
  Stream rng{cfg.probes.seed ^ 0x5711ull};

  for (double tau : cfg.tau_list) {
    {
      struct Quad {
        const CSignal *f1, *g1, *f2, *g2;
      };
      double worst = 0.0;
      for (const Quad& q : {Quad{&phi, &phi, &phi, &phi}, Quad{&h1, &h2, &sg, &ch}}) {
        const cplx lhs = inner_product(tau_wigner(*q.f1, *q.g1, tau, pg), tau_wigner(*q.f2, *q.g2, tau, pg));
        const cplx rhs = inner_product(*q.f1, *q.f2) * std::conj(inner_product(*q.g1, *q.g2));
        const double scale = q.f1->l2_norm() * q.g1->l2_norm() * q.f2->l2_norm() * q.g2->l2_norm();
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
      }
      c.add(tagged("wigner.moyal", tau), worst, cfg.tol("identity.moyal_rel"));
    }
    {
      const CField2D a = tau_wigner(h1, sg, 1.0 - tau, pg);
      const CField2D b = tau_wigner(sg, h1, tau, pg);
      double err = 0.0;
      for (std::size_t k = 0; k < a.values().size(); ++k)
        err = std::max(err, std::abs(a.values()[k] - std::conj(b.values()[k])));
      c.add(tagged("wigner.conjugation", tau), err, cfg.tol("identity.conjugation"));
    }
    {
      // W_τf(x,ξ) = W_{1-τ}f̂(ξ,-x) and W_τf̂(x,ξ) = W_{1-τ}f(-ξ,x).
      const CField2D w = tau_wigner(sg, sg, tau, pg);
      const CField2D w_hat = tau_wigner(sg_hat, sg_hat, 1.0 - tau, pg_hat);
      const CField2D v_hat = tau_wigner(sg_hat, sg_hat, tau, pg_hat);
      const CField2D v = tau_wigner(sg, sg, 1.0 - tau, pg);
      double err = 0.0;
      for (std::size_t i = 0; i < w.rows(); ++i) {
        const auto k = pg_hat.xi.index_of(-pg.x.point(i));
        if (!k) continue;
        for (std::size_t j = 0; j < w.cols(); ++j) err = std::max(err, std::abs(w(i, j) - w_hat(j, *k)));
      }
      for (std::size_t i = 0; i < v_hat.rows(); ++i)
        for (std::size_t j = 0; j < v_hat.cols(); ++j) {
          const auto r = pg.x.index_of(-pg_hat.xi.point(j));
          if (!r) continue;
          err = std::max(err, std::abs(v_hat(i, j) - v(*r, i)));
        }
      c.add(tagged("wigner.fourier_covariance", tau), err, cfg.tol("identity.fourier_covariance"));
    }
    {
      const std::size_t sx = std::min<std::size_t>(16, g.size() / 4), sw = std::min<std::size_t>(8, g.size() / 4);
      const TFShift w{static_cast<double>(sx) * pg.x.step(), static_cast<double>(sw) * pg.xi.step()};
      const CField2D lhs = tau_wigner(tf_shift(h1, w), tf_shift(phi, w), tau, pg);
      const CField2D ref = tau_wigner(h1, phi, tau, pg);
      double err = 0.0;
      for (std::size_t i = sx; i < lhs.rows(); ++i)
        for (std::size_t j = sw; j < lhs.cols(); ++j) err = std::max(err, std::abs(lhs(i, j) - ref(i - sx, j - sw)));
      c.add(tagged("wigner.covariance", tau), err, cfg.tol("identity.covariance"));
    }
    if (tau == 0.0 || tau == 1.0) {
      // Rihaczek product form against a direct t-quadrature on every 8th row.
      const CField2D w = tau_wigner(h1, sg, tau, pg);
      const SignalFn& f = h1.evaluator();
      const SignalFn& gg = sg.evaluator();
      double err = 0.0;
      for (std::size_t i = 0; i < w.rows(); i += 8) {
        const double x = pg.x.point(i);
        for (std::size_t j = 0; j < w.cols(); ++j) {
          cplx acc{};
          for (std::size_t n = 0; n < g.size(); ++n) {
            const double t = g.point(n);
            const cplx prod = tau == 0.0 ? f(x) * std::conj(gg(x - t)) : f(x + t) * std::conj(gg(x));
            acc += cis(-2.0 * pi * t * pg.xi.point(j)) * prod;
          }
          err = std::max(err, std::abs(w(i, j) - acc * g.step()));
        }
      }
      c.add(tagged("wigner.rihaczek_form", tau), err, cfg.tol("identity.rihaczek"));
    }
    if (tau >= 0.3 && tau <= 0.7) {
      const CField2D w = tau_wigner(h1, phi, tau, pg);
      const long half = static_cast<long>(g.size() / 2);
      const long kx = std::lround(2.0 / pg.x.step()), kw = std::lround(2.0 / pg.xi.step());
      double err = 0.0;
      for (int k = 0; k < 10; ++k) {
        const auto i = static_cast<std::size_t>(half + rng.integer(-kx, kx));
        const auto j = static_cast<std::size_t>(half + rng.integer(-kw, kw));
        err = std::max(err, std::abs(wigner_via_stft(h1, phi, tau, pg.x.point(i), pg.xi.point(j)) - w(i, j)));
      }
      c.add(tagged("wigner.via_stft", tau), err, cfg.tol("identity.via_stft"));
    }
  }
}

// ---------------------------------------------------------------- factorization

void verify_factorization(const ExperimentConfig& cfg, Checks& c) {
  const Grid1D g(cfg.grid_n, cfg.grid_l);
  const PhaseGrid pg = PhaseGrid::dual_of(g);
  const CSignal phi = gaussian_signal(g);
  const CSignal f = hermite_signal(1, g);
  const CSignal gs = named_signal("shifted-gaussian", g);
  const double floor = 1e-3 * f.l2_norm() * gs.l2_norm() * std::pow(phi.l2_norm(), 2);
  Stream rng{cfg.probes.seed ^ 0xfac7ull};

  for (double tau : cfg.tau_list) {
    const CField2D field = tau_wigner(gs, f, tau, pg);
    const CField2D win = tau_wigner(phi, phi, tau, pg);
    double rel = 0.0, sym = 0.0;
    int used = 0;
    for (int attempt = 0; used < 10 && attempt < 1000; ++attempt) {
      const auto [z, zeta] = random_point(rng, pg);
      const cplx closed = stft_of_wigner_closed(f, gs, phi, phi, tau, z, zeta);
      if (std::abs(closed) < floor) continue;
      ++used;
      const cplx direct = field_stft_at(field, win, z, zeta);
      rel = std::max(rel, std::abs(closed - direct) / std::abs(direct));
      if (interior(tau))
        sym = std::max(sym, std::abs(closed - stft_of_wigner_symplectic(f, gs, phi, phi, tau, z, zeta)));
    }
    if (used < 10) rel = inf;
    c.add(tagged("factorization.direct_2d", tau), rel, cfg.tol("stft_wigner.rel"));
    if (interior(tau)) c.add(tagged("factorization.symplectic_form", tau), sym, cfg.tol("identity.symplectic_form"));
  }
}

// ---------------------------------------------------------------- gaussian

void verify_gaussian(const ExperimentConfig& cfg, Checks& c) {
  const Grid1D g(cfg.grid_n, cfg.grid_l);
  const PhaseGrid pg = PhaseGrid::dual_of(g);
  const CSignal phi = gaussian_signal(g);
  const CField2D win = window_field(pg);
  Stream rng{cfg.probes.seed ^ 0x6a55ull};

  for (double tau : cfg.tau_list) {
    const CField2D w = tau_wigner(phi, phi, tau, pg);
    double err = 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i)
      for (std::size_t j = 0; j < w.cols(); ++j)
        err = std::max(err, std::abs(w(i, j) - tau_wigner_gaussian_closed(tau, pg.x.point(i), pg.xi.point(j))));
    c.add(tagged("gaussian.wigner_closed", tau), err, cfg.tol("gaussian.wigner_closed"));
    c.add(tagged("gaussian.wigner_l2", tau), std::abs(inner_product(w, w).real() - 0.5) / 0.5,
          cfg.tol("gaussian.moyal_rel"));
    double rel = 0.0;
    for (int k = 0; k < 10; ++k) {
      const auto [z, zeta] = random_point(rng, pg);
      const double ref = stft_wigner_gaussian_magnitude(tau, z, zeta);
      rel = std::max(rel, std::abs(std::abs(field_stft_at(w, win, z, zeta)) - ref) / ref);
    }
    c.add(tagged("gaussian.stft_magnitude", tau), rel, cfg.tol("gaussian.stft_closed_rel"));
  }

  {
    double rel = 0.0;
    for (const GenGaussianParams& p : {GenGaussianParams{0.7, 1.3, 0.4}, GenGaussianParams{1.2, 0.5, -0.8},
                                       gaussian_wigner_params(0.2)}) {
      const CField2D field = CField2D::from_function(pg, [&](double x, double xi) { return gen_gaussian(p, x, xi); });
      for (int k = 0; k < 10; ++k) {
        const auto [z, zeta] = random_point(rng, pg);
        const cplx ref = stft_gen_gaussian_closed(p, z, zeta);
        rel = std::max(rel, std::abs(field_stft_at(field, win, z, zeta) - ref) / std::abs(ref));
      }
    }
    c.add("gaussian.stft_closed", rel, cfg.tol("gaussian.stft_closed_rel"));
  }
  {
    // f_{a,b,-c}(x,ξ) = f_{a,b,c}(x,-ξ) and Φ is even.
    double err = 0.0;
    for (int k = 0; k < 20; ++k) {
      const GenGaussianParams p{rng.in(0.3, 2.0), rng.in(0.3, 2.0), rng.in(-1.5, 1.5)};
      const TFShift z{rng.in(-2, 2), rng.in(-2, 2)}, zeta{rng.in(-2, 2), rng.in(-2, 2)};
      const cplx a = stft_gen_gaussian_closed({p.a, p.b, -p.c}, z, zeta);
      const cplx b = stft_gen_gaussian_closed(p, {z.x, -z.omega}, {zeta.x, -zeta.omega});
      err = std::max(err, std::abs(a - b));
    }
    c.add("gaussian.chirp_sign_symmetry", err, cfg.tol("gaussian.symmetry"));
  }
  {
    double best = 0.0, arg = -1.0;
    for (int k = 0; k <= 1000; ++k) {
      const double tau = k / 1000.0;
      const double v = stft_wigner_gaussian_magnitude(tau, {}, {});
      if (v > best) best = v, arg = tau;
    }
    c.add("gaussian.amplitude_peak",
          std::max(std::abs(best - gaussian_window_peak) / gaussian_window_peak, std::abs(arg - 0.5)),
          cfg.tol("gaussian.amplitude"));
    const double numeric = std::abs(field_stft_at(tau_wigner(phi, phi, 0.5, pg), win, {}, {}));
    c.add("gaussian.amplitude_quadrature", std::abs(numeric - gaussian_window_peak) / gaussian_window_peak,
          cfg.tol("gaussian.amplitude_quadrature"));
  }
  {
    // ∫∫ |V_Φ W_τφ|(z,ζ) v_J(ζ) dz dζ over τ ∈ {0, 0.05, …, 1} for v = (1+|·|)^s.
    const double h = 0.4;
    const int n = 12;
    double worst = 0.0;
    for (double s : {0.0, 1.0, 2.0}) {
      const Weight vj = Weight::radial_poly(s).composed_with_J();
      std::vector<double> vals;
      for (int k = 0; k <= 20; ++k) {
        const double tau = 0.05 * k;
        double acc = 0.0;
        for (int a = -n; a < n; ++a)
          for (int b = -n; b < n; ++b)
            for (int e = -n; e < n; ++e)
              for (int d = -n; d < n; ++d) {
                const TFShift z{(a + 0.5) * h, (b + 0.5) * h}, zeta{(e + 0.5) * h, (d + 0.5) * h};
                acc += stft_wigner_gaussian_magnitude(tau, z, zeta) * vj(zeta.x, zeta.omega);
              }
        vals.push_back(acc * std::pow(h, 4));
      }
      const double sp = spread(vals);
      worst = std::max(worst, std::isfinite(sp) ? sp : inf);
    }
    c.add("gaussian.weighted_l1_uniform", worst, cfg.tol("gaussian.l1_spread"));
  }
}

// ---------------------------------------------------------------- symplectic

void verify_symplectic(const ExperimentConfig& cfg, Checks& c) {
  const Grid1D g(cfg.grid_n, cfg.grid_l);
  const CSignal h1 = hermite_signal(1, g);
  const SymplecticMat2 J = matrix_J();
  const SymplecticMat2 I = matrix_identity();
  for (double tau : cfg.tau_list) {
    if (!interior(tau)) continue;
    const SymplecticMat2 a = matrix_A_tau(tau);
    const SymplecticMat2 a1 = matrix_A_tau(1.0 - tau);
    const double s = std::sqrt(tau * (1.0 - tau));
    double err = std::abs(a.det() - 1.0);
    err = std::max(err, (a.transpose() * J * a).max_abs_diff(J));
    err = std::max(err, matrix_A_tau(0.5).max_abs_diff(J));
    err = std::max(err, a.transpose().max_abs_diff(-1.0 * a1));
    err = std::max(err, a.inverse().max_abs_diff(-1.0 * a));
    err = std::max(err, (a1 * a).max_abs_diff(I - matrix_B_tau(tau)));
    err = std::max(err, (s * (a + a1)).max_abs_diff(J));
    c.add(tagged("symplectic.lemma", tau), err, cfg.tol("symplectic.lemma"));

    const double r = (1.0 - tau) / tau;
    const TFShift z{0.5, 0.75};
    const CSignal lhs = tf_shift(a_tau_operator(h1, tau), z);
    const CSignal rhs = a_tau_operator(tf_shift(h1, {-r * z.x, -z.omega / r}), tau);
    c.add(tagged("symplectic.commutation", tau), max_abs_diff(lhs.samples(), rhs.samples()),
          cfg.tol("identity.commutation"));
  }
}

// ---------------------------------------------------------------- spaces

void verify_spaces(const ExperimentConfig& cfg, Checks& c) {
  Stream rng{cfg.probes.seed ^ 0x5bacull};
  {
    double sub = 0.0, mod = 0.0;
    for (const Weight& v : {Weight::constant(), Weight::radial_poly(2.0), Weight::radial_poly(0.5),
                            Weight::separable_poly(1.0, 2.0), Weight::exponential(0.5)}) {
      const Weight m = v.reciprocal();
      for (int k = 0; k < 1000; ++k) {
        const double x1 = rng.in(-10, 10), x2 = rng.in(-10, 10), y1 = rng.in(-10, 10), y2 = rng.in(-10, 10);
        const double prod = v(x1, x2) * v(y1, y2);
        sub = std::max(sub, (v(x1 + y1, x2 + y2) - prod) / prod);
        const double bound = v(y1, y2) * m(x1, x2);
        mod = std::max(mod, (m(x1 + y1, x2 + y2) - bound) / bound);
      }
    }
    c.add("spaces.weight_submultiplicative", sub, cfg.tol("spaces.weight"));
    c.add("spaces.weight_moderate", mod, cfg.tol("spaces.weight"));
  }
  {
    double y2 = 0.0, yinf = 0.0, yl2 = 0.0;
    for (int inst = 0; inst < cfg.young_instances; ++inst) {
      const double sv = rng.in(0.0, 2.0);
      const Weight v = Weight::radial_poly(sv);
      Weight m = Weight::radial_poly(rng.in(0.0, sv));
      if (rng.next() < 0.5) m = m.reciprocal();

      const std::vector<double> steps2{rng.in(0.2, 1.0), rng.in(0.2, 1.0)};
      auto dims2 = [&] { return std::vector<std::size_t>{static_cast<std::size_t>(rng.integer(3, 12)),
                                                         static_cast<std::size_t>(rng.integer(3, 12))}; };
      const LatticeField f = random_field(rng, dims2(), steps2);
      const LatticeField h = random_field(rng, dims2(), steps2);
      const auto [p1, p2, r] = young_triple(rng);
      const auto [q1, q2, s] = young_triple(rng);
      const NormOrder order = rng.next() < 0.5 ? NormOrder::inner_x : NormOrder::inner_xi;
      const double lhs = mixed_norm(linear_convolution(f, h), {r, s, m, order});
      const double rhs = mixed_norm(f, {p1, q1, v, order}) * mixed_norm(h, {p2, q2, m, order});
      y2 = std::max(y2, violation(lhs, rhs));

      const std::size_t n4 = inst == 0 ? 16 : static_cast<std::size_t>(rng.integer(3, 8));
      const std::vector<double> steps4{rng.in(0.2, 1.0), rng.in(0.2, 1.0), rng.in(0.2, 1.0), rng.in(0.2, 1.0)};
      const LatticeField F = random_field(rng, {n4, n4, n4, n4}, steps4);
      const LatticeField G = random_field(rng, {n4, n4, n4, n4}, steps4);
      const LatticeField FG = linear_convolution(F, G);
      const double fl1 = lp_norm_zeta_weighted(F, 1.0, v);
      yinf = std::max(yinf, violation(linf_l1_norm(FG, m), fl1 * linf_l1_norm(G, m)));
      yl2 = std::max(yl2, violation(lp_norm_zeta_weighted(FG, 2.0, m), fl1 * lp_norm_zeta_weighted(G, 2.0, m)));
    }
    c.add("spaces.young_mixed", y2, cfg.tol("spaces.young_slack"));
    c.add("spaces.young_linf_l1", yinf, cfg.tol("spaces.young_slack"));
    c.add("spaces.young_l2", yl2, cfg.tol("spaces.young_slack"));
  }
  {
    const Grid1D g(cfg.grid_n, cfg.grid_l);
    const CSignal phi = gaussian_signal(g);
    const CSignal phi_hat = fourier_transform(phi);
    const Weight one = Weight::constant();
    double worst = 0.0;
    for (const auto& [p, q] : {std::pair{2.0, 2.0}, std::pair{1.0, inf}}) {
      const double m = modulation_norm(phi, phi, p, q, one);
      const double w = wiener_amalgam_norm(phi_hat, phi_hat, p, q, one, one);
      worst = std::max(worst, std::abs(m - w) / m);
    }
    c.add("spaces.wiener_modulation_identity", worst, cfg.tol("spaces.wm_rel"));
  }
  {
    const SymbolStftPlan plan = cfg.symbol_plan();
    const CField2D a = symbol_gaussian().sample_on(plan.symbol_grid);
    const SymbolNormSpec specs[] = {{2.0, 2.0, NormOrder::inner_xi, Weight::constant(), Weight::constant()},
                                    {2.0, 2.0, NormOrder::inner_x, Weight::constant(), Weight::constant()}};
    const auto v = symbol_stft_norms(a, plan, specs);
    c.add("spaces.symbol_wiener_modulation",
          std::max(std::abs(v[0] - v[1]) / v[1], std::abs(v[0] - 0.5) / 0.5), cfg.tol("spaces.wm_rel"));
  }
  {
    const double tol = cfg.tol("alpha.exact");
    c.add("alpha.half", std::abs(alpha(2.0, 2.0, 0.5) - 4.0), tol);
    double e1 = 0.0, e2 = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double tau = k / 100.0;
      e1 = std::max(e1, std::abs(alpha(1.0, inf, tau) * std::pow(1.0 - tau, 2) - 1.0));
      e2 = std::max(e2, std::abs(alpha(inf, 1.0, tau) * tau * tau - 1.0));
    }
    c.add("alpha.one_inf", e1, tol);
    c.add("alpha.inf_one", e2, tol);
    // Endpoint behaviour on τ = 10^{-k} and 1 - 10^{-k}: violated claims are counted.
    double bad = 0.0, prev_near0 = 0.0, prev_near1 = 0.0, prev_inf1 = 0.0;
    for (int k = 1; k <= 8; ++k) {
      const double t = std::pow(10.0, -k);
      const double a0 = alpha(1.0, inf, t), a1 = alpha(1.0, inf, 1.0 - t), b0 = alpha(inf, 1.0, t);
      if (k > 1 && !(a0 < prev_near0 && a1 > prev_near1 && b0 > prev_inf1)) bad += 1.0;
      prev_near0 = a0, prev_near1 = a1, prev_inf1 = b0;
    }
    if (!(std::abs(prev_near0 - 1.0) < 1e-7 && prev_near1 > 1e15 && prev_inf1 > 1e15)) bad += 1.0;
    c.add("alpha.endpoint_limits", bad, 0.0);
    double min_off = inf;
    for (int k = 1; k < 1000; ++k) {
      if (k == 500) continue;
      min_off = std::min(min_off, alpha(2.0, 2.0, k / 1000.0) - 4.0);
    }
    c.add("alpha.minimum_at_half", (min_off > 0.0 ? 0.0 : 1.0) + std::abs(alpha(2.0, 2.0, 0.5) - 4.0), tol);
  }
}

// ---------------------------------------------------------------- operators

void verify_operators(const ExperimentConfig& cfg, Checks& c) {
  const Grid1D g(cfg.grid_n, cfg.grid_l);
  const PhaseGrid pg = PhaseGrid::dual_of(g);
  const CSignal phi = gaussian_signal(g);
  const CSignal h1 = hermite_signal(1, g);
  const CSignal sg = named_signal("shifted-gaussian", g);
  const CSignal unit = signal_from(g, [](double t) { return hermite_value(0, t); });
  const Symbol gauss = symbol_gaussian();
  const Symbol gauss_sampled = Symbol::sampled("gaussian-samples", gauss.sample_on(pg), true);
  const CSignal mix = scaled_sum(g, {{1, 1.0}, {0, 0.3}, {2, -0.2}});

  const CSignal x_expected = signal_from(g, [&](double t) { return std::exp(-pi * t * t) * h1.evaluator()(t); });
  CSignal xi_expected = [&] {
    const CSignal fh = fourier_transform(h1);
    std::vector<cplx> s(fh.size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = fh[k] * std::exp(-pi * std::pow(fh.grid().point(k), 2));
    return inverse_fourier(CSignal(fh.grid(), std::move(s)), g);
  }();

  for (double tau : cfg.tau_list) {
    c.add(tagged("operator.identity", tau), rel_l2(build_kernel(symbol_constant(1.0), tau, g).apply(phi), phi),
          cfg.tol("operator.identity"));
    c.add(tagged("operator.multiplier_x", tau), rel_l2(build_kernel(symbol_multiplier_x(), tau, g).apply(h1), x_expected),
          cfg.tol("operator.multiplier"));
    c.add(tagged("operator.multiplier_xi", tau),
          rel_l2(build_kernel(symbol_multiplier_xi(), tau, g).apply(h1), xi_expected), cfg.tol("operator.multiplier"));
    c.add(tagged("operator.weak_pairing", tau), weak_pairing_residual(gauss, tau, h1, sg),
          cfg.tol("operator.weak_pairing"));

    const Symbol rank_one = Symbol::sampled("rank-one", tau_wigner(phi, h1, tau, pg), false);
    const CSignal got = build_kernel(rank_one, tau, g).apply(mix);
    const cplx coef = inner_product(mix, h1);
    std::vector<cplx> want(g.size());
    for (std::size_t n = 0; n < want.size(); ++n) want[n] = coef * phi[n];
    c.add(tagged("operator.rank_one", tau), rel_l2(got, CSignal(g, want)), cfg.tol("operator.rank_one"));

    const Symbol projector = Symbol::sampled("projector", tau_wigner(unit, unit, tau, pg), false);
    c.add(tagged("operator.rank_one_norm", tau), std::abs(l2_operator_norm(build_kernel(projector, tau, g)).value - 1.0),
          cfg.tol("operator.rank_one"));

    if (interior(tau)) {
      const OperatorMatrix kc = build_kernel(gauss, tau, g);
      const OperatorMatrix ks = build_kernel(gauss_sampled, tau, g);
      double diff = 0.0;
      for (std::size_t k = 0; k < kc.entries.size(); ++k) diff += std::norm(kc.entries[k] - ks.entries[k]);
      c.add(tagged("operator.cross_quantization", tau), std::sqrt(diff) / kc.frobenius(),
            cfg.tol("operator.cross_quantization"));
    }
  }

  c.add("operator.kn_agreement", rel_l2(build_kernel(gauss, 0.0, g).apply(h1), op_kohn_nirenberg(gauss, h1)),
        cfg.tol("operator.kn_agreement"));
  {
    const OperatorMatrix k = build_kernel(gauss, 0.5, g);
    double diff = 0.0, scale = 0.0;
    for (std::size_t m = 0; m < k.size(); ++m)
      for (std::size_t n = 0; n < k.size(); ++n) {
        diff = std::max(diff, std::abs(k(m, n) - std::conj(k(n, m))));
        scale = std::max(scale, std::abs(k(m, n)));
      }
    c.add("operator.weyl_hermitian", diff / scale, cfg.tol("operator.weyl_hermitian"));
    c.add("operator.l2_norm_scaling",
          std::abs(l2_operator_norm(k.scaled(3.0)).value - 3.0 * l2_operator_norm(k).value) /
              (3.0 * l2_operator_norm(k).value),
          cfg.tol("operator.norm"));
  }
  {
    const Symbol proj = Symbol::sampled("weyl-projector", tau_wigner(phi, phi, 0.5, pg), true);
    const CSignal got = op_weyl(proj, mix);
    const cplx coef = inner_product(mix, phi);
    std::vector<cplx> want(g.size());
    for (std::size_t n = 0; n < want.size(); ++n) want[n] = coef * phi[n];
    c.add("operator.weyl_rank_one", rel_l2(got, CSignal(g, want)), cfg.tol("operator.weyl_rank_one"));
  }
  c.add("operator.adjoint_gaussian", adjoint_residual(gauss, g), cfg.tol("operator.adjoint"));
  c.add("operator.adjoint_counterexample", adjoint_residual(symbol_counterexample(), g),
        cfg.tol("operator.adjoint_singular"));
  c.add("operator.identity_norm",
        std::abs(l2_operator_norm(build_kernel(symbol_constant(1.0), 0.5, g)).value - 1.0), cfg.tol("operator.norm"));
  {
    const Grid1D g128(128, cfg.grid_l);
    const PhaseGrid p128 = PhaseGrid::dual_of(g128);
    const OperatorMatrix a = build_kernel(convert_symbol(gauss, 0.5, 0.0, p128), 0.0, g128);
    const OperatorMatrix b = build_kernel(gauss, 0.5, g128);
    double diff = 0.0;
    for (std::size_t k = 0; k < a.entries.size(); ++k) diff += std::norm(a.entries[k] - b.entries[k]);
    c.add("operator.conversion", std::sqrt(diff) / b.frobenius(), cfg.tol("operator.conversion"));

    const CField2D two = convert_symbol(convert_symbol(gauss, 0.2, 0.7, p128), 0.7, 0.4, p128).sample_on(p128);
    const CField2D one = convert_symbol(gauss, 0.2, 0.4, p128).sample_on(p128);
    c.add("operator.conversion_semigroup", max_abs_diff(two.values(), one.values()) / gauss.sup_abs(p128),
          cfg.tol("operator.conversion_semigroup"));
  }
  {
    // ℱ[e^{2πitxξ} e^{-π(x²+ξ²)/σ²}] against ℱH_t for |ζ| ≤ 0.2.
    const double t = 0.45, sigma = 9.0;
    const Grid1D gc(1024, 48.0);
    const PhaseGrid pc{gc, gc};
    const CField2D h = CField2D::from_function(pc, [&](double x, double xi) {
      return cis(2.0 * pi * t * x * xi) * std::exp(-pi * (x * x + xi * xi) / (sigma * sigma));
    });
    const CField2D spec = fourier_transform_2d(h);
    const PhaseGrid& sgd = spec.grid();
    double rel = 0.0;
    for (std::size_t i = 0; i < spec.rows(); ++i)
      for (std::size_t j = 0; j < spec.cols(); ++j) {
        const double z1 = sgd.x.point(i), z2 = sgd.xi.point(j);
        if (z1 * z1 + z2 * z2 > 0.04) continue;
        const cplx ref = chirp_fourier_closed(t, z1, z2);
        rel = std::max(rel, std::abs(spec(i, j) - ref) / std::abs(ref));
      }
    c.add("operator.chirp_fourier", rel, cfg.tol("operator.chirp_rel"));
  }
  {
    const Grid1D gs(cfg.grid_n, cfg.grid_l, true);
    const CSignal u = op_kohn_nirenberg(symbol_counterexample(), gaussian_signal(gs));
    double rel = 0.0;
    for (std::size_t n = 0; n < gs.size(); ++n) {
      const double x = gs.point(n);
      if (x < 0.1 || x > 1.0) continue;
      const double ref = std::exp(-pi * x * x / 2.0) / std::sqrt(2.0 * x);
      rel = std::max(rel, std::abs(u[n] - ref) / ref);
    }
    c.add("operator.counterexample_closed", rel, cfg.tol("counterexample.closed_rel"));
  }
}

using SectionFn = void (*)(const ExperimentConfig&, Checks&);

const std::vector<std::pair<std::string, SectionFn>>& section_table() {
  static const std::vector<std::pair<std::string, SectionFn>> table{
      {"grid", verify_grid},         {"stft", verify_stft},
      {"wigner", verify_wigner},     {"factorization", verify_factorization},
      {"gaussian", verify_gaussian}, {"symplectic", verify_symplectic},
      {"spaces", verify_spaces},     {"operators", verify_operators},
  };
  return table;
}

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<double> sorted_taus(const ExperimentConfig& cfg) {
  std::vector<double> t = cfg.tau_list;
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

}  // namespace

bool RunSummary::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> RunSummary::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass) out.push_back(c.name);
  return out;
}

const std::vector<std::string>& verify_sections() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : section_table()) n.push_back(name);
    return n;
  }();
  return names;
}

RunSummary run_verify(const ExperimentConfig& cfg, CsvTable& csv, const std::vector<std::string>& sections) {
  for (const auto& s : sections)
    if (std::find(verify_sections().begin(), verify_sections().end(), s) == verify_sections().end())
      throw std::invalid_argument("unknown verify section: " + s);
  ExperimentConfig run = cfg;
  run.tau_list = sorted_taus(cfg);
  RunSummary summary;
  summary.command = "verify";
  summary.config_hash = cfg.hash();
  Checks checks(summary);
  for (const auto& [name, fn] : section_table())
    if (sections.empty() || std::find(sections.begin(), sections.end(), name) != sections.end()) fn(run, checks);

  csv.header = {"check", "value", "threshold", "pass", "config_hash"};
  csv.rows.clear();
  for (const auto& c : summary.checks)
    csv.rows.push_back({c.name, format_real(c.value), format_real(c.threshold), c.pass ? "true" : "false",
                        summary.config_hash});
  summary.metrics["checks"] = std::to_string(summary.checks.size());
  summary.metrics["failed"] = std::to_string(summary.failures().size());
  return summary;
}

// ---------------------------------------------------------------- scaling

CsvTable run_scaling(const ExperimentConfig& cfg, RunSummary& summary) {
  summary.command = "scaling";
  summary.config_hash = cfg.hash();
  Checks checks(summary);
  const Grid1D g = cfg.grid();
  const Symbol a = named_symbol(cfg.symbol);
  const Weight v = parse_weight(cfg.weight);
  const double p = cfg.symbol_p, q = cfg.symbol_q;
  const double r1 = cfg.r1, r2 = cfg.r2;
  const bool admissible = q <= conjugate_exponent(p) &&
                          std::max({r1, r2, conjugate_exponent(r1), conjugate_exponent(r2)}) <= p;
  if (!admissible)
    summary.metrics["warning"] = "exponents outside the admissible class (q <= p', max{r1,r2,r1',r2'} <= p)";

  const SymbolStftPlan plan = cfg.symbol_plan();
  const SymbolNormSpec spec{p, q, NormOrder::inner_xi, Weight::constant(), v.composed_with_J()};
  const double symbol_norm = symbol_stft_norms(a.sample_on(plan.symbol_grid), plan, {&spec, 1})[0];

  CsvTable csv;
  csv.header = {"tau", "alpha", "norm_lower", "ratio", "symbol_norm", "ratio_unnormalized", "best_probe",
                "admissible", "config_hash"};
  std::vector<double> ratios, unnormalized;
  for (double tau : sorted_taus(cfg)) {
    if (!interior(tau)) continue;
    const double al = alpha(r1, r2, tau);
    const OperatorMatrix k = build_kernel(a, tau, g);
    const NormLowerBound lb = modulation_operator_norm_lower(k, r1, r2, v, cfg.probes);
    const double ratio = symbol_norm > 0.0 ? lb.value / (al * symbol_norm) : 0.0;
    const double plain = symbol_norm > 0.0 ? lb.value / symbol_norm : 0.0;
    csv.rows.push_back({format_real(tau), format_real(al), format_real(lb.value), format_real(ratio),
                        format_real(symbol_norm), format_real(plain), lb.best_probe.empty() ? "none" : lb.best_probe,
                        admissible ? "yes" : "no", summary.config_hash});
    if (ratio > 0.0) ratios.push_back(ratio);
    if (plain > 0.0) unnormalized.push_back(plain);
  }
  summary.metrics["symbol_norm"] = format_real(symbol_norm);
  summary.metrics["rows"] = std::to_string(csv.rows.size());
  if (!ratios.empty()) {
    summary.metrics["ratio_min"] = format_real(*std::min_element(ratios.begin(), ratios.end()));
    summary.metrics["ratio_max"] = format_real(*std::max_element(ratios.begin(), ratios.end()));
    checks.add("scaling.ratio_spread", spread(ratios), cfg.tol("scaling.spread"));
    summary.metrics["unnormalized_spread"] = format_real(spread(unnormalized));
    if (cfg.r1 == 2.0 && cfg.r2 == 2.0)
      checks.add("scaling.l2_uniform", spread(unnormalized) - 1.0, cfg.tol("norms.l2_uniform"));
  }
  return csv;
}

// ---------------------------------------------------------------- counterexample

double counterexample_closed_form(double eps) {
  auto e1 = [](double y) { return -std::expint(-y); };
  return 0.25 * (e1(pi * eps * eps) - e1(pi));
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

CsvTable run_counterexample(const ExperimentConfig& cfg, RunSummary& summary) {
  summary.command = "counterexample";
  summary.config_hash = cfg.hash();
  Checks checks(summary);
  const Symbol a = symbol_counterexample();
  const Grid1D coarse(cfg.grid_n, cfg.grid_l, true);
  const CSignal phi = gaussian_signal(coarse);
  const Grid1D fine(cfg.refine_n, cfg.refine_l, true);

  std::vector<double> eps = cfg.epsilon_list;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  if (eps.empty()) throw std::invalid_argument("counterexample: empty epsilon list");
  const double eps_min = eps.back();

  std::vector<std::size_t> idx;
  std::vector<double> pts;
  for (std::size_t n = 0; n < fine.size(); ++n) {
    const double x = fine.point(n);
    if (x >= eps_min && x <= 1.0) idx.push_back(n), pts.push_back(x);
  }
  const std::vector<cplx> u = op_kohn_nirenberg_at(a, phi, pts);

  double closed_rel = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (pts[k] < 0.1) continue;
    const double ref = std::exp(-pi * pts[k] * pts[k] / 2.0) / std::sqrt(2.0 * pts[k]);
    closed_rel = std::max(closed_rel, std::abs(u[k] - ref) / ref);
  }

  CsvTable csv;
  csv.header = {"epsilon", "partial_l2_sq", "log_inv_eps", "closed_form", "anti_kn_pairing", "flagged",
                "config_hash"};
  std::vector<double> xs, ys;
  double partial_rel = 0.0, adjoint_rel = 0.0;
  for (double e : eps) {
    double partial = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (pts[k] >= e) partial += std::norm(u[k]);
    partial *= fine.step();
    // g_ε = Op₀(a)φ restricted to [ε,1] and normalized; ⟨Op₁(a)g_ε, φ⟩ = ⟨g_ε, Op₀(a)φ⟩.
    std::vector<cplx> ge(fine.size());
    const double norm = std::sqrt(partial);
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (pts[k] >= e && norm > 0.0) ge[idx[k]] = u[k] / norm;
    const double pairing = std::abs(anti_kohn_nirenberg_pairing(a, CSignal(fine, std::move(ge)), phi));
    const double closed = counterexample_closed_form(e);
    const bool flagged = e < 4.0 * fine.step();
    csv.rows.push_back({format_real(e), format_real(partial), format_real(std::log(1.0 / e)), format_real(closed),
                        format_real(pairing), flagged ? "yes" : "no", summary.config_hash});
    if (flagged) continue;
    xs.push_back(std::log(1.0 / e));
    ys.push_back(partial);
    partial_rel = std::max(partial_rel, std::abs(partial - closed) / closed);
    adjoint_rel = std::max(adjoint_rel, std::abs(pairing - norm) / norm);
  }
  const double slope = fit_slope(xs, ys);
  summary.metrics["slope"] = format_real(slope);
  summary.metrics["refined_step"] = format_real(fine.step());
  checks.add("counterexample.slope", std::abs(slope - 0.5), cfg.tol("counterexample.slope_dev"));
  checks.add("counterexample.closed_form_on_0.1_1", closed_rel, cfg.tol("counterexample.closed_rel"));
  checks.add("counterexample.partial_vs_closed", partial_rel, cfg.tol("counterexample.closed_rel"));
  checks.add("counterexample.anti_kn_adjoint", adjoint_rel, cfg.tol("counterexample.adjoint_rel"));
  return csv;
}

// ---------------------------------------------------------------- norms

CsvTable run_norms(const ExperimentConfig& cfg, RunSummary& summary) {
  summary.command = "norms";
  summary.config_hash = cfg.hash();
  Checks checks(summary);
  const Grid1D g = cfg.grid();
  const CSignal f = named_signal(cfg.norms_f, g);
  const CSignal h = named_signal(cfg.norms_g, g);
  const CSignal phi = gaussian_signal(g);
  std::vector<cplx> unit(phi.samples().begin(), phi.samples().end());
  for (cplx& x : unit) x /= phi.l2_norm();
  const CSignal window(g, std::move(unit));
  const Weight one = Weight::constant();
  const double p1 = cfg.norms_p1, p2 = cfg.norms_p2;
  const double fn = modulation_norm(f, window, p1, p1, one);
  const double hn = modulation_norm(h, window, p2, p2, one);

  const Weight vinv = parse_weight(cfg.weight).composed_with_J().reciprocal();
  const SymbolNormSpec specs[] = {{1.0, inf, NormOrder::inner_xi, one, vinv},
                                  {2.0, 2.0, NormOrder::inner_xi, one, vinv},
                                  {p1, p2, NormOrder::inner_x, one, vinv}};
  const SymbolStftPlan plan = cfg.symbol_plan();

  CsvTable csv;
  csv.header = {"tau", "wiener_l1_linf", "alpha", "ratio", "wiener_l2", "ratio_l2", "modulation", "ratio_modulation",
                "config_hash"};
  std::vector<double> r_l1, r_l2;
  for (double tau : sorted_taus(cfg)) {
    if (!interior(tau)) continue;
    const CField2D w = tau_wigner(h, f, tau, plan.symbol_grid);
    const auto v = symbol_stft_norms(w, plan, specs);
    const double al = alpha(p1, p2, tau);
    const double ratio = v[0] / (al * fn * hn);
    csv.rows.push_back({format_real(tau), format_real(v[0]), format_real(al), format_real(ratio), format_real(v[1]),
                        format_real(v[1] / (fn * hn)), format_real(v[2]), format_real(v[2] / (fn * hn)),
                        summary.config_hash});
    if (tau >= 0.1 - 1e-12 && tau <= 0.9 + 1e-12) r_l1.push_back(ratio);
    r_l2.push_back(v[1] / (fn * hn));
  }
  if (!r_l2.empty()) {
    checks.add("norms.l2_uniform", spread(r_l2) - 1.0, cfg.tol("norms.l2_uniform"));
    summary.metrics["ratio_l2_spread"] = format_real(spread(r_l2));
  }
  if (!r_l1.empty()) {
    checks.add("norms.l1_linf_alpha_bounded", spread(r_l1), cfg.tol("scaling.spread"));
    summary.metrics["ratio_spread"] = format_real(spread(r_l1));
  }
  return csv;
}

// ---------------------------------------------------------------- convert

CsvTable run_convert(const ExperimentConfig& cfg, double tau1, double tau2, RunSummary& summary) {
  summary.command = "convert";
  summary.config_hash = cfg.hash();
  Checks checks(summary);
  const Grid1D g = cfg.grid();
  const PhaseGrid pg = PhaseGrid::dual_of(g);
  const Symbol a = named_symbol(cfg.symbol);
  const Symbol b = convert_symbol(a, tau1, tau2, pg);
  const CField2D s = b.sample_on(pg);

  const OperatorMatrix ka = build_kernel(a, tau1, g);
  const OperatorMatrix kb = build_kernel(b, tau2, g);
  double diff = 0.0;
  for (std::size_t k = 0; k < ka.entries.size(); ++k) diff += std::norm(ka.entries[k] - kb.entries[k]);
  const double ref = ka.frobenius();
  const double residual = ref > 0.0 ? std::sqrt(diff) / ref : std::sqrt(diff);
  summary.metrics["tau1"] = format_real(tau1);
  summary.metrics["tau2"] = format_real(tau2);
  checks.add("convert.operator_equivalence", residual, cfg.tol("operator.conversion"));

  CsvTable csv;
  csv.header = {"x", "xi", "re", "im", "config_hash"};
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      csv.rows.push_back({format_real(pg.x.point(i)), format_real(pg.xi.point(j)), format_real(s(i, j).real()),
                          format_real(s(i, j).imag()), summary.config_hash});
  return csv;
}

// ---------------------------------------------------------------- output

std::string csv_text(const CsvTable& table) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return os.str();
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << csv_text(table);
}

void write_summary(const std::string& path, const RunSummary& summary, const ExperimentConfig& cfg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "command=" << summary.command << '\n';
  out << "config_hash=" << summary.config_hash << '\n';
  out << "timestamp=" << iso_timestamp() << '\n';
  out << "status=" << (summary.all_pass() ? "pass" : "fail") << '\n';
  out << "checks=" << summary.checks.size() << '\n';
  const auto failed = summary.failures();
  out << "failed=" << failed.size() << '\n';
  for (const auto& name : failed) out << "failure=" << name << '\n';
  for (const auto& c : summary.checks) {
    out << "check." << c.name << ".value=" << format_real(c.value) << '\n';
    out << "check." << c.name << ".threshold=" << format_real(c.threshold) << '\n';
    out << "check." << c.name << ".pass=" << (c.pass ? "true" : "false") << '\n';
  }
  for (const auto& [k, v] : summary.metrics) out << "metric." << k << '=' << v << '\n';
  for (const auto& [k, v] : cfg.tolerances) out << "tol." << k << '=' << format_real(v) << '\n';
}

}  // namespace tfq
