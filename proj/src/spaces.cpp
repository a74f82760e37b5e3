#include "tfq/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tfq {
namespace {

using WeightFn = std::function<double(double, double)>;

double inv(double r) { return std::isinf(r) ? 0.0 : 1.0 / r; }

void require_exponent(double p, const char* what) {
  if (!(p >= 1.0)) throw std::invalid_argument(std::string(what) + ": exponent must be >= 1");
}

// |v|^p with the common exponents special-cased; pow dominates the 4-D loops.
inline double powp(double v, double p) {
  if (p == 1.0) return v;
  if (p == 2.0) return v * v;
  return std::pow(v, p);
}

double mixed_norm_impl(const LatticeField& f, double p, double q, NormOrder order,
                       const WeightFn& m) {
  require_exponent(p, "mixed_norm");
  require_exponent(q, "mixed_norm");
  if (f.rank() != 2) throw std::invalid_argument("mixed_norm: rank-2 field required");
  const std::size_t n0 = f.dims[0], n1 = f.dims[1];
  const bool inner0 = order == NormOrder::inner_x;
  const std::size_t n_in = inner0 ? n0 : n1;
  const std::size_t n_out = inner0 ? n1 : n0;
  const double h_in = inner0 ? f.steps[0] : f.steps[1];
  const double h_out = inner0 ? f.steps[1] : f.steps[0];
  double outer = 0.0;
  for (std::size_t o = 0; o < n_out; ++o) {
    double inner = 0.0;
    for (std::size_t k = 0; k < n_in; ++k) {
      const std::size_t i = inner0 ? k : o;
      const std::size_t j = inner0 ? o : k;
      const double v = std::abs(f.data[i * n1 + j]) * m(f.coord(0, i), f.coord(1, j));
      if (std::isinf(p)) inner = std::max(inner, v);
      else inner += powp(v, p);
    }
    if (!std::isinf(p)) inner = std::pow(inner * h_in, 1.0 / p);
    if (std::isinf(q)) outer = std::max(outer, inner);
    else outer += powp(inner, q);
  }
  return std::isinf(q) ? outer : std::pow(outer * h_out, 1.0 / q);
}

}  // namespace

Weight Weight::radial_poly(double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("Weight: polynomial order must be >= 0");
  return Weight(Kind::radial_poly, s, 0.0);
}

Weight Weight::separable_poly(double s1, double s2) {
  if (!(s1 >= 0.0) || !(s2 >= 0.0))
    throw std::invalid_argument("Weight: polynomial orders must be >= 0");
  return Weight(Kind::separable_poly, s1, s2);
}

Weight Weight::exponential(double a) {
  if (!(a >= 0.0) || a > 1.0) throw std::invalid_argument("Weight: exponential rate must lie in [0,1]");
  return Weight(Kind::exponential, a, 0.0);
}

double Weight::operator()(double z1, double z2) const {
  double v = 1.0;
  switch (kind_) {
    case Kind::constant:
      break;
    case Kind::radial_poly:
      v = std::pow(1.0 + std::hypot(z1, z2), p1_);
      break;
    case Kind::separable_poly:
      v = std::pow(1.0 + std::abs(z1), p1_) * std::pow(1.0 + std::abs(z2), p2_);
      break;
    case Kind::exponential:
      v = std::exp(p1_ * std::hypot(z1, z2));
      break;
  }
  return reciprocal_ ? 1.0 / v : v;
}

Weight Weight::composed_with_J() const {
  Weight w = *this;
  if (kind_ == Kind::separable_poly) std::swap(w.p1_, w.p2_);
  return w;
}

Weight Weight::reciprocal() const {
  Weight w = *this;
  w.reciprocal_ = !reciprocal_;
  return w;
}

std::string Weight::describe() const {
  std::ostringstream os;
  if (reciprocal_) os << "1/";
  switch (kind_) {
    case Kind::constant: os << "constant"; break;
    case Kind::radial_poly: os << "radial_poly(" << p1_ << ")"; break;
    case Kind::separable_poly: os << "separable_poly(" << p1_ << "," << p2_ << ")"; break;
    case Kind::exponential: os << "exponential(" << p1_ << ")"; break;
  }
  return os.str();
}

void MixedNormSpec::validate() const {
  require_exponent(p, "MixedNormSpec");
  require_exponent(q, "MixedNormSpec");
}

LatticeField LatticeField::zeros(std::vector<std::size_t> dims, std::vector<double> steps,
                                 std::vector<double> origin) {
  if (dims.size() != steps.size() || dims.size() != origin.size())
    throw std::invalid_argument("LatticeField: inconsistent rank");
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  return {std::move(dims), std::move(steps), std::move(origin), std::vector<cplx>(total)};
}

LatticeField LatticeField::from_field(const CField2D& f) {
  const PhaseGrid& pg = f.grid();
  LatticeField out{{pg.x.size(), pg.xi.size()},
                   {pg.x.step(), pg.xi.step()},
                   {static_cast<double>(pg.x.size() / 2) - pg.x.shift(),
                    static_cast<double>(pg.xi.size() / 2) - pg.xi.shift()},
                   std::vector<cplx>(f.values().begin(), f.values().end())};
  return out;
}

double LatticeField::cell() const {
  return std::accumulate(steps.begin(), steps.end(), 1.0, std::multiplies<>());
}

std::size_t LatticeField::flat(std::span<const std::size_t> idx) const {
  std::size_t k = 0;
  for (std::size_t a = 0; a < dims.size(); ++a) k = k * dims[a] + idx[a];
  return k;
}

LatticeField linear_convolution(const LatticeField& f, const LatticeField& g) {
  if (f.rank() != g.rank()) throw std::invalid_argument("linear_convolution: rank mismatch");
  const std::size_t r = f.rank();
  std::vector<std::size_t> dims(r);
  std::vector<double> origin(r);
  for (std::size_t a = 0; a < r; ++a) {
    if (std::abs(f.steps[a] - g.steps[a]) > 1e-12 * f.steps[a])
      throw std::invalid_argument("linear_convolution: step mismatch");
    dims[a] = f.dims[a] + g.dims[a] - 1;
    origin[a] = f.origin[a] + g.origin[a];
  }
  LatticeField out = LatticeField::zeros(dims, f.steps, origin);
  const std::size_t total = out.data.size();

  auto embed = [&](const LatticeField& src) {
    std::vector<cplx> buf(total);
    std::vector<std::size_t> idx(r, 0);
    for (std::size_t k = 0; k < src.data.size(); ++k) {
      std::size_t rem = k;
      for (std::size_t a = r; a-- > 0;) {
        idx[a] = rem % src.dims[a];
        rem /= src.dims[a];
      }
      buf[out.flat(idx)] = src.data[k];
    }
    return buf;
  };
  std::vector<cplx> a = embed(f);
  std::vector<cplx> b = embed(g);
  std::vector<int> idims(dims.begin(), dims.end());
  fft::transform_nd(a, idims, fft::Direction::Forward);
  fft::transform_nd(b, idims, fft::Direction::Forward);
  for (std::size_t k = 0; k < total; ++k) a[k] *= b[k];
  fft::transform_nd(a, idims, fft::Direction::Backward);
  const double scale = f.cell() / static_cast<double>(total);
  for (std::size_t k = 0; k < total; ++k) out.data[k] = a[k] * scale;
  return out;
}

double mixed_norm(const LatticeField& f, const MixedNormSpec& spec) {
  spec.validate();
  const Weight& w = spec.weight;
  return mixed_norm_impl(f, spec.p, spec.q, spec.order, [&w](double a, double b) { return w(a, b); });
}

double mixed_norm(const CField2D& f, const MixedNormSpec& spec) {
  return mixed_norm(LatticeField::from_field(f), spec);
}

double linf_l1_norm(const LatticeField& f, const Weight& m) {
  if (f.rank() != 4) throw std::invalid_argument("linf_l1_norm: rank-4 field required");
  const std::size_t nz = f.dims[0] * f.dims[1];
  const std::size_t n2 = f.dims[2], n3 = f.dims[3];
  std::vector<double> mw(n2 * n3);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n3; ++j) mw[i * n3 + j] = m(f.coord(2, i), f.coord(3, j));
  const double dzeta = f.steps[2] * f.steps[3];
  double best = 0.0;
  for (std::size_t z = 0; z < nz; ++z) {
    double acc = 0.0;
    const cplx* row = f.data.data() + z * n2 * n3;
    for (std::size_t k = 0; k < n2 * n3; ++k) acc += std::abs(row[k]) * mw[k];
    best = std::max(best, acc * dzeta);
  }
  return best;
}

double lp_norm_zeta_weighted(const LatticeField& f, double p, const Weight& m) {
  require_exponent(p, "lp_norm_zeta_weighted");
  if (f.rank() != 4) throw std::invalid_argument("lp_norm_zeta_weighted: rank-4 field required");
  const std::size_t nz = f.dims[0] * f.dims[1];
  const std::size_t n2 = f.dims[2], n3 = f.dims[3];
  std::vector<double> mw(n2 * n3);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n3; ++j) mw[i * n3 + j] = m(f.coord(2, i), f.coord(3, j));
  double acc = 0.0;
  for (std::size_t z = 0; z < nz; ++z) {
    const cplx* row = f.data.data() + z * n2 * n3;
    for (std::size_t k = 0; k < n2 * n3; ++k) {
      const double v = std::abs(row[k]) * mw[k];
      acc = std::isinf(p) ? std::max(acc, v) : acc + powp(v, p);
    }
  }
  return std::isinf(p) ? acc : std::pow(acc * f.cell(), 1.0 / p);
}

double modulation_norm(const CSignal& f, const CSignal& window, double p, double q,
                       const Weight& m) {
  const CField2D v = stft(f, window, PhaseGrid::dual_of(f.grid()));
  return mixed_norm(v, {p, q, m, NormOrder::inner_x});
}

double wiener_amalgam_norm(const CSignal& f, const CSignal& window, double p, double q,
                           const Weight& u, const Weight& w) {
  const CField2D v = stft(f, window, PhaseGrid::dual_of(f.grid()));
  return mixed_norm_impl(LatticeField::from_field(v), p, q, NormOrder::inner_xi,
                         [&](double x, double omega) { return w(x) * u(omega); });
}

namespace {

// Shared driver: calls sink(z index pair, z coords, |V(z,·)| table) for every z.
template <class Sink>
void for_each_symbol_stft(const CField2D& symbol, const SymbolStftPlan& plan, Sink&& sink,
                          bool keep_phase = false, std::vector<cplx>* phase_out = nullptr) {
  const PhaseGrid& pg = plan.symbol_grid;
  if (!(symbol.grid() == pg)) throw std::invalid_argument("symbol STFT: symbol not on the plan grid");
  if (plan.z_stride == 0) throw std::invalid_argument("symbol STFT: zero stride");
  const std::size_t n0 = pg.x.size(), n1 = pg.xi.size();
  // Centering the output lattice only costs a (-1)^(i+j) pre-twiddle; the
  // remaining post-twiddle has unit modulus and drops out of every norm, and is
  // applied explicitly only when the full transform is requested.
  std::vector<cplx> base(n0 * n1);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j)
      base[i * n1 + j] = symbol(i, j) * (((i + j) & 1) ? -1.0 : 1.0);
  const double cell = pg.cell_area();
  const int dims[2] = {static_cast<int>(n0), static_cast<int>(n1)};
  std::vector<cplx> work(n0 * n1);
  std::vector<double> mag(n0 * n1);
  std::vector<double> wx(n0), wy(n1);
  const double pi = std::numbers::pi;
  for (std::size_t a = 0; a < n0; a += plan.z_stride) {
    const double z1 = pg.x.point(a);
    for (std::size_t i = 0; i < n0; ++i) {
      const double d = pg.x.point(i) - z1;
      wx[i] = std::exp(-pi * d * d);
    }
    for (std::size_t b = 0; b < n1; b += plan.z_stride) {
      const double z2 = pg.xi.point(b);
      for (std::size_t j = 0; j < n1; ++j) {
        const double d = pg.xi.point(j) - z2;
        wy[j] = std::exp(-pi * d * d);
      }
      for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n1; ++j) work[i * n1 + j] = base[i * n1 + j] * (wx[i] * wy[j]);
      fft::transform_nd(work, dims, fft::Direction::Forward);
      for (std::size_t k = 0; k < work.size(); ++k) mag[k] = std::abs(work[k]) * cell;
      if (keep_phase && phase_out) {
        const double s0 = pg.x.shift() - static_cast<double>(n0 / 2);
        const double s1 = pg.xi.shift() - static_cast<double>(n1 / 2);
        for (std::size_t k0 = 0; k0 < n0; ++k0)
          for (std::size_t k1 = 0; k1 < n1; ++k1) {
            const double ang = -2.0 * pi *
                               (s0 * (static_cast<double>(k0) - static_cast<double>(n0 / 2)) /
                                    static_cast<double>(n0) +
                                s1 * (static_cast<double>(k1) - static_cast<double>(n1 / 2)) /
                                    static_cast<double>(n1));
            phase_out->push_back(work[k0 * n1 + k1] * cell * cplx(std::cos(ang), std::sin(ang)));
          }
      }
      sink(z1, z2, mag);
    }
  }
}

}  // namespace

std::vector<double> symbol_stft_norms(const CField2D& symbol, const SymbolStftPlan& plan,
                                      std::span<const SymbolNormSpec> specs) {
  const PhaseGrid& pg = plan.symbol_grid;
  const Grid1D zeta1 = make_dual_grid(pg.x);
  const Grid1D zeta2 = make_dual_grid(pg.xi);
  const std::size_t n0 = zeta1.size(), n1 = zeta2.size();
  const double dzeta = zeta1.step() * zeta2.step();
  const double dz = plan.z_stride * pg.x.step() * plan.z_stride * pg.xi.step();

  struct State {
    std::vector<double> zeta_w;  // zeta_weight(ζ)
    std::vector<double> acc;     // per-ζ accumulator for inner_x
    double outer = 0.0;
  };
  std::vector<State> st(specs.size());
  for (std::size_t s = 0; s < specs.size(); ++s) {
    require_exponent(specs[s].p, "symbol_stft_norms");
    require_exponent(specs[s].q, "symbol_stft_norms");
    st[s].zeta_w.resize(n0 * n1);
    for (std::size_t i = 0; i < n0; ++i)
      for (std::size_t j = 0; j < n1; ++j)
        st[s].zeta_w[i * n1 + j] = specs[s].zeta_weight(zeta1.point(i), zeta2.point(j));
    if (specs[s].order == NormOrder::inner_x) st[s].acc.assign(n0 * n1, 0.0);
  }

  for_each_symbol_stft(symbol, plan, [&](double z1, double z2, const std::vector<double>& mag) {
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const SymbolNormSpec& sp = specs[s];
      State& S = st[s];
      const double wz = sp.z_weight(z1, z2);
      if (sp.order == NormOrder::inner_xi) {
        double inner = 0.0;
        for (std::size_t k = 0; k < mag.size(); ++k) {
          const double v = mag[k] * S.zeta_w[k];
          inner = std::isinf(sp.p) ? std::max(inner, v) : inner + powp(v, sp.p);
        }
        if (!std::isinf(sp.p)) inner = std::pow(inner * dzeta, 1.0 / sp.p);
        const double v = inner * wz;
        S.outer = std::isinf(sp.q) ? std::max(S.outer, v) : S.outer + powp(v, sp.q);
      } else {
        for (std::size_t k = 0; k < mag.size(); ++k) {
          const double v = mag[k] * wz;
          S.acc[k] = std::isinf(sp.p) ? std::max(S.acc[k], v) : S.acc[k] + powp(v, sp.p);
        }
      }
    }
  });

  std::vector<double> out(specs.size());
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const SymbolNormSpec& sp = specs[s];
    State& S = st[s];
    if (sp.order == NormOrder::inner_xi) {
      out[s] = std::isinf(sp.q) ? S.outer : std::pow(S.outer * dz, 1.0 / sp.q);
      continue;
    }
    double outer = 0.0;
    for (std::size_t k = 0; k < S.acc.size(); ++k) {
      const double inner = std::isinf(sp.p) ? S.acc[k] : std::pow(S.acc[k] * dz, 1.0 / sp.p);
      const double v = inner * S.zeta_w[k];
      outer = std::isinf(sp.q) ? std::max(outer, v) : outer + powp(v, sp.q);
    }
    out[s] = std::isinf(sp.q) ? outer : std::pow(outer * dzeta, 1.0 / sp.q);
  }
  return out;
}

LatticeField symbol_stft_field(const CField2D& symbol, const SymbolStftPlan& plan) {
  const PhaseGrid& pg = plan.symbol_grid;
  const Grid1D zeta1 = make_dual_grid(pg.x);
  const Grid1D zeta2 = make_dual_grid(pg.xi);
  const std::size_t nz0 = (pg.x.size() + plan.z_stride - 1) / plan.z_stride;
  const std::size_t nz1 = (pg.xi.size() + plan.z_stride - 1) / plan.z_stride;
  std::vector<cplx> values;
  values.reserve(nz0 * nz1 * zeta1.size() * zeta2.size());
  for_each_symbol_stft(symbol, plan, [](double, double, const std::vector<double>&) {}, true,
                       &values);
  const double zs0 = static_cast<double>(pg.x.size() / 2) - pg.x.shift();
  const double zs1 = static_cast<double>(pg.xi.size() / 2) - pg.xi.shift();
  return {{nz0, nz1, zeta1.size(), zeta2.size()},
          {plan.z_stride * pg.x.step(), plan.z_stride * pg.xi.step(), zeta1.step(), zeta2.step()},
          {zs0 / static_cast<double>(plan.z_stride), zs1 / static_cast<double>(plan.z_stride),
           static_cast<double>(zeta1.size() / 2), static_cast<double>(zeta2.size() / 2)},
          std::move(values)};
}

double conjugate_exponent(double p) {
  require_exponent(p, "conjugate_exponent");
  if (p == 1.0) return inf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double alpha(double r1, double r2, double tau, int d) {
  require_exponent(r1, "alpha");
  require_exponent(r2, "alpha");
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("alpha: tau must lie in (0,1)");
  if (d < 1) throw std::invalid_argument("alpha: dimension must be positive");
  const double e1 = d * ((1.0 - inv(r1)) + inv(r2));
  const double e2 = d * (inv(r1) + (1.0 - inv(r2)));
  return std::pow(tau, -e1) * std::pow(1.0 - tau, -e2);
}

}  // namespace tfq
