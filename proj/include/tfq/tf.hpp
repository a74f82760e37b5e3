#pragma once

#include "tfq/grid.hpp"

namespace tfq {

/// Time-frequency point, also used as the shift π(z) = M_ω T_x.
struct TFShift {
  double x = 0.0;
  double omega = 0.0;
};

/// Real 2×2 matrix [[a11, a12], [a21, a22]] acting on (x, ω) column vectors.
struct SymplecticMat2 {
  double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;

  double det() const noexcept { return a11 * a22 - a12 * a21; }
  SymplecticMat2 transpose() const noexcept { return {a11, a21, a12, a22}; }
  SymplecticMat2 inverse() const;
  TFShift apply(TFShift v) const noexcept {
    return {a11 * v.x + a12 * v.omega, a21 * v.x + a22 * v.omega};
  }
  double max_abs_diff(const SymplecticMat2& o) const noexcept;

  friend SymplecticMat2 operator*(const SymplecticMat2& l, const SymplecticMat2& r) noexcept {
    return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
            l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
  }
  friend SymplecticMat2 operator+(const SymplecticMat2& l, const SymplecticMat2& r) noexcept {
    return {l.a11 + r.a11, l.a12 + r.a12, l.a21 + r.a21, l.a22 + r.a22};
  }
  friend SymplecticMat2 operator-(const SymplecticMat2& l, const SymplecticMat2& r) noexcept {
    return {l.a11 - r.a11, l.a12 - r.a12, l.a21 - r.a21, l.a22 - r.a22};
  }
  friend SymplecticMat2 operator*(double s, const SymplecticMat2& m) noexcept {
    return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
  }
};

SymplecticMat2 matrix_identity();
/// J = [[0, 1], [-1, 0]].
SymplecticMat2 matrix_J();
/// 𝒜_τ = [[0, √((1-τ)/τ)], [-√(τ/(1-τ)), 0]]; τ must lie in (0, 1).
SymplecticMat2 matrix_A_tau(double tau);
/// ℬ_τ = diag(1/(1-τ), 1/τ); τ must lie in (0, 1).
SymplecticMat2 matrix_B_tau(double tau);

/// Builds a signal whose evaluator is `fn` and whose samples are fn on `grid`.
CSignal signal_from(const Grid1D& grid, SignalFn fn);

/// π(z)f(t) = e^{2πiωt} f(t - x).
CSignal tf_shift(const CSignal& f, TFShift z);

/// V_g f(x_m, ω_k) = step Σ_n f(t_n) conj(g(t_n - x_m)) e^{-2πi t_n ω_k}, one FFT per row.
/// pg.xi must be the dual of f's grid; pg.x is arbitrary. Throws on a zero window.
CField2D stft(const CSignal& f, const CSignal& g, const PhaseGrid& pg);

/// Single-point STFT by direct quadrature over f's grid.
cplx stft_at(const CSignal& f, const CSignal& g, double x, double omega);

/// τ-Wigner distribution W_τ(f,g)(x,ξ) = ∫ e^{-2πitξ} f(x+τt) conj(g(x-(1-τ)t)) dt.
///
/// For τ in (0,1) the t-sum runs over dual(pg.xi) and is done by FFT per x row.
/// τ = 0 and τ = 1 use the Rihaczek forms e^{-2πixξ} f(x) conj(ĝ(ξ)) and
/// e^{2πixξ} conj(g(x)) f̂(ξ).
CField2D tau_wigner(const CSignal& f, const CSignal& g, double tau, const PhaseGrid& pg);

/// A_τ f(t) = f(-((1-τ)/τ) t), τ in (0,1).
CSignal a_tau_operator(const CSignal& f, double tau);

/// τ^{-1} e^{2πixξ/τ} V_{A_τ g} f(x/(1-τ), ξ/τ).
cplx wigner_via_stft(const CSignal& f, const CSignal& g, double tau, double x, double xi);

/// V_{W_τ(φ1,φ2)} W_τ(g,f)(z,ζ) =
///   e^{-2πi z₂ζ₂} V_{φ1}g(z₁-τζ₂, z₂+(1-τ)ζ₁) conj(V_{φ2}f(z₁+(1-τ)ζ₂, z₂-τζ₁)),
/// valid on the closed interval τ in [0,1]; the endpoint cases are the Rihaczek
/// and conjugate-Rihaczek factorizations.
cplx stft_of_wigner_closed(const CSignal& f, const CSignal& g, const CSignal& phi1,
                           const CSignal& phi2, double tau, TFShift z, TFShift zeta);

/// Same factorization with the arguments formed as z + √(τ(1-τ)) 𝒜_τᵀζ and
/// z + √(τ(1-τ)) 𝒜_τ ζ; τ in (0,1).
cplx stft_of_wigner_symplectic(const CSignal& f, const CSignal& g, const CSignal& phi1,
                               const CSignal& phi2, double tau, TFShift z, TFShift zeta);

/// Direct phase-space STFT at one point:
///   Σ F(x,ξ) conj(W(x-z₁, ξ-z₂)) e^{-2πi(xζ₁+ξζ₂)} dx dξ.
/// z must sit on the lattice of F's grid so the window shift is an index shift;
/// W is given on the same grid and taken as zero off it.
cplx field_stft_at(const CField2D& field, const CField2D& window, TFShift z, TFShift zeta);

}  // namespace tfq
