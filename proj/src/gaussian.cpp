#include "tfq/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tfq {
namespace {

constexpr double pi = std::numbers::pi;

void require_closed_tau(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [0,1]");
}

}  // namespace

void GenGaussianParams::validate() const {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("GenGaussianParams: need a > 0, b > 0, finite c");
}

cplx gen_gaussian(const GenGaussianParams& p, double x, double xi) {
  p.validate();
  return std::exp(cplx(-pi * (p.a * x * x + p.b * xi * xi), 2.0 * pi * p.c * x * xi));
}

cplx stft_gen_gaussian_closed(const GenGaussianParams& p, TFShift z, TFShift zeta) {
  p.validate();
  const double a = p.a, b = p.b, c = p.c;
  const double z1 = z.x, z2 = z.omega, w1 = zeta.x, w2 = zeta.omega;
  const double d = (a + 1.0) * (b + 1.0) + c * c;
  const double quad = (a * (b + 1.0) + c * c) * z1 * z1 + ((a + 1.0) * b + c * c) * z2 * z2 +
                      (b + 1.0) * w1 * w1 + (a + 1.0) * w2 * w2 - 2.0 * c * (z1 * w2 + z2 * w1);
  const double phase = (b + 1.0) * z1 * w1 - c * (z1 * z2 - w1 * w2) + (a + 1.0) * z2 * w2;
  return std::exp(cplx(-pi * quad / d, -2.0 * pi * phase / d)) / std::sqrt(d);
}

double gaussian_wigner_scale(double tau) {
  require_closed_tau(tau);
  return 2.0 * tau * tau - 2.0 * tau + 1.0;
}

cplx tau_wigner_gaussian_closed(double tau, double x, double xi) {
  const double c = gaussian_wigner_scale(tau);
  return std::exp(cplx(-pi * (x * x + xi * xi) / c, 2.0 * pi * (2.0 * tau - 1.0) * x * xi / c)) /
         std::sqrt(c);
}

GenGaussianParams gaussian_wigner_params(double tau) {
  const double c = gaussian_wigner_scale(tau);
  return {1.0 / c, 1.0 / c, (2.0 * tau - 1.0) / c};
}

double stft_wigner_gaussian_magnitude(double tau, TFShift z, TFShift zeta) {
  require_closed_tau(tau);
  const double d5 = 2.0 * tau * tau - 2.0 * tau + 5.0;
  const double q = 3.0 * (z.x * z.x + z.omega * z.omega) +
                   (2.0 * tau * tau - 2.0 * tau + 2.0) * (zeta.x * zeta.x + zeta.omega * zeta.omega) +
                   (2.0 - 4.0 * tau) * (z.x * zeta.omega + z.omega * zeta.x);
  return std::exp(-pi * q / d5) / std::sqrt(d5);
}

CSignal gaussian_signal(const Grid1D& grid) {
  return signal_from(grid, [](double t) { return cplx(std::exp(-pi * t * t), 0.0); });
}

double hermite_value(int n, double t) {
  if (n < 0) throw std::invalid_argument("hermite_value: negative order");
  const double y = std::sqrt(2.0 * pi) * t;
  const double scale = std::pow(2.0 * pi, 0.25);
  double prev = 0.0;
  double cur = std::pow(pi, -0.25) * std::exp(-0.5 * y * y);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * y * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return scale * cur;
}

CSignal hermite_signal(int n, const Grid1D& grid) {
  if (n < 0) throw std::invalid_argument("hermite_signal: negative order");
  return signal_from(grid, [n](double t) { return cplx(hermite_value(n, t), 0.0); });
}

CSignal named_signal(const std::string& name, const Grid1D& grid) {
  if (name == "gaussian") return gaussian_signal(grid);
  if (name.rfind("hermite", 0) == 0 && name.size() == 8 && name[7] >= '0' && name[7] <= '9')
    return hermite_signal(name[7] - '0', grid);
  if (name == "shifted-gaussian") return tf_shift(gaussian_signal(grid), {1.0, 0.5});
  if (name == "chirp-gaussian")
    return signal_from(grid, [](double t) { return std::exp(cplx(-pi * t * t, 0.5 * pi * t * t)); });
  throw std::invalid_argument("unknown signal name: " + name);
}

}  // namespace tfq
