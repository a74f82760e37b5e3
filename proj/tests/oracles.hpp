#pragma once

// Reference computations for the tests. Everything here works from closed-form
// functions and plain O(N) or O(N^2) sums; nothing calls into the FFT paths.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Fn = std::function<cplx(double)>;

inline constexpr double pi = std::numbers::pi;

inline cplx cis(double a) { return {std::cos(a), std::sin(a)}; }

// Trapezoid rule on [-half, half] with n panels. Adequate for the rapidly
// decaying integrands used here once half is a few units.
inline cplx integrate(const Fn& f, double half, int n) {
  const double h = 2.0 * half / n;
  cplx acc = 0.5 * (f(-half) + f(half));
  for (int i = 1; i < n; ++i) acc += f(-half + i * h);
  return acc * h;
}

// ∫ f(t) e^{-2πitξ} dt.
inline cplx fourier(const Fn& f, double xi, double half = 8.0, int n = 8192) {
  return integrate([&](double t) { return f(t) * cis(-2.0 * pi * t * xi); }, half, n);
}

// V_g f(x,ω) = ∫ f(t) conj(g(t-x)) e^{-2πitω} dt.
inline cplx stft(const Fn& f, const Fn& g, double x, double omega, double half = 8.0, int n = 8192) {
  return integrate([&](double t) { return f(t) * std::conj(g(t - x)) * cis(-2.0 * pi * t * omega); }, half, n);
}

// W_τ(f,g)(x,ξ) = ∫ e^{-2πitξ} f(x+τt) conj(g(x-(1-τ)t)) dt.
inline cplx tau_wigner(const Fn& f, const Fn& g, double tau, double x, double xi, double half = 12.0,
                       int n = 12000) {
  return integrate(
      [&](double t) { return cis(-2.0 * pi * t * xi) * f(x + tau * t) * std::conj(g(x - (1.0 - tau) * t)); },
      half, n);
}

// 2-D STFT of F with window W at (z, ζ) by a tensor trapezoid rule.
inline cplx stft_2d(const std::function<cplx(double, double)>& F, const std::function<cplx(double, double)>& W,
                    double z1, double z2, double zeta1, double zeta2, double half = 6.0, int n = 480) {
  const double h = 2.0 * half / n;
  cplx acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = -half + i * h;
    const double wx = (i == 0 || i == n) ? 0.5 : 1.0;
    for (int j = 0; j <= n; ++j) {
      const double xi = -half + j * h;
      const double wy = (j == 0 || j == n) ? 0.5 : 1.0;
      acc += wx * wy * F(x, xi) * std::conj(W(x - z1, xi - z2)) * cis(-2.0 * pi * (x * zeta1 + xi * zeta2));
    }
  }
  return acc * h * h;
}

// Op_τ(a)f(x) = ∫∫ e^{2πi(x-y)ξ} a((1-τ)x+τy, ξ) f(y) dy dξ by a tensor trapezoid rule.
inline cplx op_tau(const std::function<cplx(double, double)>& a, const Fn& f, double tau, double x,
                   double half = 6.0, int n = 480) {
  const double h = 2.0 * half / n;
  cplx acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double y = -half + i * h;
    const double wy = (i == 0 || i == n) ? 0.5 : 1.0;
    const cplx fy = f(y);
    const double u = (1.0 - tau) * x + tau * y;
    for (int j = 0; j <= n; ++j) {
      const double xi = -half + j * h;
      const double wx = (j == 0 || j == n) ? 0.5 : 1.0;
      acc += wy * wx * cis(2.0 * pi * (x - y) * xi) * a(u, xi) * fy;
    }
  }
  return acc * h * h;
}

// Direct O(N^2) offset DFT: scale Σ in[n] exp(s 2πi (n+a)(k+b)/N).
inline std::vector<cplx> offset_dft(const std::vector<cplx>& in, double sign, double a, double b, double scale) {
  const std::size_t n = in.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ph = sign * 2.0 * pi * (static_cast<double>(j) + a) * (static_cast<double>(k) + b) /
                        static_cast<double>(n);
      acc += in[j] * cis(ph);
    }
    out[k] = scale * acc;
  }
  return out;
}

// E₁(y) = -γ - ln y - Σ_{k≥1} (-y)^k / (k·k!), summed until the terms vanish.
inline double exp_integral_e1(double y) {
  constexpr double euler_gamma = 0.57721566490153286061;
  double sum = 0.0, term = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -y / k;
    const double add = term / k;
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return -euler_gamma - std::log(y) - sum;
}

// ∫_ε^1 (1/2) x^{-1} e^{-πx²} dx by substituting x = e^s and a fine trapezoid rule.
inline double counterexample_partial(double eps, int n = 200000) {
  const double a = std::log(eps);
  const double h = -a / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double s = a + i * h;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    acc += w * 0.5 * std::exp(-pi * std::exp(2.0 * s));
  }
  return acc * h;
}

inline Fn gaussian() {
  return [](double t) { return cplx(std::exp(-pi * t * t), 0.0); };
}

}  // namespace oracle
