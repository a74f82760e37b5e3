#pragma once

#include <string>

#include "tfq/tf.hpp"

namespace tfq {

// f_{a,b,c}(x,ξ) = e^{-πax²} e^{-πbξ²} e^{2πicxξ}; c may take either sign.
struct GenGaussianParams {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;

  void validate() const;
};

cplx gen_gaussian(const GenGaussianParams& p, double x, double xi);

// V_Φ f_{a,b,c}(z,ζ) for Φ(x,ξ) = e^{-π(x²+ξ²)}, z = (z₁,z₂), ζ = (ζ₁,ζ₂).
// With D = (a+1)(b+1)+c²:
//   D^{-1/2} exp(-π[(a(b+1)+c²)z₁² + ((a+1)b+c²)z₂² + (b+1)ζ₁² + (a+1)ζ₂²
//                    - 2c(z₁ζ₂+z₂ζ₁)]/D)
//   · exp(-2πi[(b+1)z₁ζ₁ - c(z₁z₂ - ζ₁ζ₂) + (a+1)z₂ζ₂]/D).
cplx stft_gen_gaussian_closed(const GenGaussianParams& p, TFShift z, TFShift zeta);

// c(τ) = 2τ² - 2τ + 1.
double gaussian_wigner_scale(double tau);

// W_τφ(x,ξ) = c^{-1/2} e^{-π(x²+ξ²)/c} e^{2πi(2τ-1)xξ/c} for φ(t) = e^{-πt²}.
cplx tau_wigner_gaussian_closed(double tau, double x, double xi);

// W_τφ written as c(τ)^{-1/2} f_{1/c, 1/c, (2τ-1)/c}.
GenGaussianParams gaussian_wigner_params(double tau);

// |V_Φ W_τφ|(z,ζ) with D₅ = 2τ²-2τ+5:
//   D₅^{-1/2} exp(-π[3|z|² + (2τ²-2τ+2)|ζ|² + (2-4τ)(z₁ζ₂+z₂ζ₁)]/D₅).
double stft_wigner_gaussian_magnitude(double tau, TFShift z, TFShift zeta);

// Peak of the magnitude over τ, reached at τ = 1/2: (9/2)^{-1/2} = (2/9)^{1/2}.
inline constexpr double gaussian_window_peak = 0.4714045207910317;

// φ(t) = e^{-πt²}.
CSignal gaussian_signal(const Grid1D& grid);

// L²-normalized Hermite function h_n(t) = (2π)^{1/4} ψ_n(√(2π) t), where ψ_n are the
// standard Hermite functions; h_0 = 2^{1/4} φ and ℱh_n = (-i)^n h_n.
CSignal hermite_signal(int n, const Grid1D& grid);
double hermite_value(int n, double t);

// Named test signals: "gaussian", "hermite0".."hermite9", "shifted-gaussian"
// (π(1, 0.5)φ), "chirp-gaussian" (e^{iπt²/2}φ). Throws on unknown names.
CSignal named_signal(const std::string& name, const Grid1D& grid);

}  // namespace tfq
