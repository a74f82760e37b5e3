#include "tfq/tf.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tfq {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

cplx cis(double a) { return {std::cos(a), std::sin(a)}; }

void require_open_tau(double tau, const char* what) {
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument(std::string(what) + ": tau must lie in (0,1)");
}

void require_closed_tau(double tau, const char* what) {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw std::invalid_argument(std::string(what) + ": tau must lie in [0,1]");
}

bool all_zero(const CSignal& g) {
  for (const cplx& v : g.samples())
    if (v != cplx{}) return false;
  return true;
}

// FFT over a centered, unshifted t-grid onto its dual; `row` is overwritten.
void centered_forward(std::span<cplx> row, double h) {
  const double half = static_cast<double>(row.size() / 2);
  std::vector<cplx> in(row.begin(), row.end());
  fft::offset_dft(in, row, fft::Direction::Forward, -half, -half, h);
}

}  // namespace

SymplecticMat2 SymplecticMat2::inverse() const {
  const double d = det();
  if (d == 0.0) throw std::domain_error("SymplecticMat2: singular matrix");
  return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

double SymplecticMat2::max_abs_diff(const SymplecticMat2& o) const noexcept {
  return std::max({std::abs(a11 - o.a11), std::abs(a12 - o.a12), std::abs(a21 - o.a21),
                   std::abs(a22 - o.a22)});
}

SymplecticMat2 matrix_identity() { return {1.0, 0.0, 0.0, 1.0}; }
SymplecticMat2 matrix_J() { return {0.0, 1.0, -1.0, 0.0}; }

SymplecticMat2 matrix_A_tau(double tau) {
  require_open_tau(tau, "matrix_A_tau");
  return {0.0, std::sqrt((1.0 - tau) / tau), -std::sqrt(tau / (1.0 - tau)), 0.0};
}

SymplecticMat2 matrix_B_tau(double tau) {
  require_open_tau(tau, "matrix_B_tau");
  return {1.0 / (1.0 - tau), 0.0, 0.0, 1.0 / tau};
}

CSignal signal_from(const Grid1D& grid, SignalFn fn) {
  return CSignal::from_function(grid, std::move(fn));
}

CSignal tf_shift(const CSignal& f, TFShift z) {
  SignalSampler s(f);
  return signal_from(f.grid(), [s, z](double t) { return cis(two_pi * z.omega * t) * s(t - z.x); });
}

CField2D stft(const CSignal& f, const CSignal& g, const PhaseGrid& pg) {
  if (all_zero(g)) throw std::invalid_argument("stft: zero window");
  const Grid1D& tg = f.grid();
  if (!(pg.xi == make_dual_grid(tg)))
    throw std::invalid_argument("stft: frequency grid must be the dual of the signal grid");
  SignalSampler gs(g);
  const auto t = tg.points();
  const double half = static_cast<double>(tg.size() / 2);
  CField2D out(pg);
  std::vector<cplx> prod(tg.size());
  for (std::size_t m = 0; m < pg.x.size(); ++m) {
    const double xm = pg.x.point(m);
    for (std::size_t n = 0; n < t.size(); ++n) prod[n] = f[n] * std::conj(gs(t[n] - xm));
    fft::offset_dft(prod, out.row(m), fft::Direction::Forward, tg.shift() - half, -half,
                    tg.step());
  }
  return out;
}

cplx stft_at(const CSignal& f, const CSignal& g, double x, double omega) {
  SignalSampler gs(g);
  const Grid1D& tg = f.grid();
  cplx acc{};
  for (std::size_t n = 0; n < tg.size(); ++n) {
    const double t = tg.point(n);
    acc += f[n] * std::conj(gs(t - x)) * cis(-two_pi * t * omega);
  }
  return acc * tg.step();
}

CField2D tau_wigner(const CSignal& f, const CSignal& g, double tau, const PhaseGrid& pg) {
  require_closed_tau(tau, "tau_wigner");
  CField2D out(pg);
  if (tau == 0.0 || tau == 1.0) {
    // Rihaczek forms: the transformed factor is sampled on its own dual grid.
    const CSignal& direct = tau == 0.0 ? f : g;
    const CSignal spectrum = fourier_transform(tau == 0.0 ? g : f);
    SignalSampler ds(direct);
    SignalSampler ss(spectrum);
    std::vector<cplx> hat(pg.xi.size());
    for (std::size_t j = 0; j < hat.size(); ++j) hat[j] = ss(pg.xi.point(j));
    const double sgn = tau == 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < pg.x.size(); ++i) {
      const double x = pg.x.point(i);
      const cplx d = ds(x);
      for (std::size_t j = 0; j < hat.size(); ++j) {
        const cplx a = tau == 0.0 ? d * std::conj(hat[j]) : std::conj(d) * hat[j];
        out(i, j) = cis(sgn * two_pi * x * pg.xi.point(j)) * a;
      }
    }
    return out;
  }

  const Grid1D tg = make_dual_grid(pg.xi);
  const auto t = tg.points();
  SignalSampler fs(f);
  SignalSampler gs(g);
  for (std::size_t i = 0; i < pg.x.size(); ++i) {
    const double x = pg.x.point(i);
    auto row = out.row(i);
    for (std::size_t n = 0; n < t.size(); ++n)
      row[n] = fs(x + tau * t[n]) * std::conj(gs(x - (1.0 - tau) * t[n]));
    centered_forward(row, tg.step());
  }
  return out;
}

CSignal a_tau_operator(const CSignal& f, double tau) {
  require_open_tau(tau, "a_tau_operator");
  const double r = (1.0 - tau) / tau;
  SignalSampler s(f);
  return signal_from(f.grid(), [s, r](double t) { return s(-r * t); });
}

cplx wigner_via_stft(const CSignal& f, const CSignal& g, double tau, double x, double xi) {
  require_open_tau(tau, "wigner_via_stft");
  const CSignal ag = a_tau_operator(g, tau);
  return cis(two_pi * x * xi / tau) * stft_at(f, ag, x / (1.0 - tau), xi / tau) / tau;
}

cplx stft_of_wigner_closed(const CSignal& f, const CSignal& g, const CSignal& phi1,
                           const CSignal& phi2, double tau, TFShift z, TFShift zeta) {
  require_closed_tau(tau, "stft_of_wigner_closed");
  const cplx vg = stft_at(g, phi1, z.x - tau * zeta.omega, z.omega + (1.0 - tau) * zeta.x);
  const cplx vf = stft_at(f, phi2, z.x + (1.0 - tau) * zeta.omega, z.omega - tau * zeta.x);
  return cis(-two_pi * z.omega * zeta.omega) * vg * std::conj(vf);
}

cplx stft_of_wigner_symplectic(const CSignal& f, const CSignal& g, const CSignal& phi1,
                               const CSignal& phi2, double tau, TFShift z, TFShift zeta) {
  const SymplecticMat2 a = matrix_A_tau(tau);
  const double s = std::sqrt(tau * (1.0 - tau));
  const TFShift p = (s * a.transpose()).apply(zeta);
  const TFShift q = (s * a).apply(zeta);
  const cplx vg = stft_at(g, phi1, z.x + p.x, z.omega + p.omega);
  const cplx vf = stft_at(f, phi2, z.x + q.x, z.omega + q.omega);
  return cis(-two_pi * z.omega * zeta.omega) * vg * std::conj(vf);
}

cplx field_stft_at(const CField2D& field, const CField2D& window, TFShift z, TFShift zeta) {
  const PhaseGrid& pg = field.grid();
  if (!(window.grid() == pg)) throw std::invalid_argument("field_stft_at: grid mismatch");
  const double dx = z.x / pg.x.step();
  const double dw = z.omega / pg.xi.step();
  const long sx = std::lround(dx);
  const long sw = std::lround(dw);
  if (std::abs(dx - static_cast<double>(sx)) > 1e-9 || std::abs(dw - static_cast<double>(sw)) > 1e-9)
    throw std::invalid_argument("field_stft_at: z must lie on the lattice");
  const long nx = static_cast<long>(pg.x.size());
  const long nw = static_cast<long>(pg.xi.size());
  std::vector<cplx> ex(pg.xi.size());
  for (long j = 0; j < nw; ++j) ex[j] = cis(-two_pi * pg.xi.point(j) * zeta.omega);
  cplx acc{};
  for (long i = 0; i < nx; ++i) {
    const long wi = i - sx;
    if (wi < 0 || wi >= nx) continue;
    cplx racc{};
    for (long j = 0; j < nw; ++j) {
      const long wj = j - sw;
      if (wj < 0 || wj >= nw) continue;
      racc += field(i, j) * std::conj(window(wi, wj)) * ex[j];
    }
    acc += racc * cis(-two_pi * pg.x.point(i) * zeta.x);
  }
  return acc * pg.cell_area();
}

}  // namespace tfq
