#pragma once

#include <limits>
#include <string>
#include <vector>

#include "tfq/tf.hpp"

namespace tfq {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Submultiplicative weight on the plane, or its reciprocal.
///
///   constant            1
///   radial_poly(s)      (1+|z|)^s
///   separable_poly(s,t) (1+|z₁|)^s (1+|z₂|)^t
///   exponential(a)      e^{a|z|},  0 ≤ a ≤ 1
///
/// A reciprocal weight evaluates to 1/v and is v-moderate.
class Weight {
 public:
  enum class Kind { constant, radial_poly, separable_poly, exponential };

  static Weight constant() { return Weight(Kind::constant, 0.0, 0.0); }
  static Weight radial_poly(double s);
  static Weight separable_poly(double s1, double s2);
  static Weight exponential(double a);

  double operator()(double z1, double z2) const;
  /// One-variable restriction t ↦ v(t, 0).
  double operator()(double t) const { return (*this)(t, 0.0); }

  /// v_J(ζ) = v(Jζ) = v(ζ₂, -ζ₁).
  Weight composed_with_J() const;
  Weight reciprocal() const;

  Kind kind() const noexcept { return kind_; }
  bool is_reciprocal() const noexcept { return reciprocal_; }
  double param1() const noexcept { return p1_; }
  double param2() const noexcept { return p2_; }
  std::string describe() const;

 private:
  Weight(Kind k, double p1, double p2) : kind_(k), p1_(p1), p2_(p2) {}
  Kind kind_;
  double p1_;
  double p2_;
  bool reciprocal_ = false;
};

/// Which variable the inner integral runs over. inner_x is the modulation
/// convention (time inside), inner_xi the Wiener amalgam one (frequency inside).
enum class NormOrder { inner_x, inner_xi };

struct MixedNormSpec {
  double p = 2.0;
  double q = 2.0;
  Weight weight = Weight::constant();
  NormOrder order = NormOrder::inner_x;

  void validate() const;
};

/// Dense field on a uniform lattice in 2 or 4 dimensions, row-major.
/// Coordinate along axis k at index i is (i - origin[k]) * step[k].
struct LatticeField {
  std::vector<std::size_t> dims;
  std::vector<double> steps;
  std::vector<double> origin;
  std::vector<cplx> data;

  static LatticeField zeros(std::vector<std::size_t> dims, std::vector<double> steps,
                            std::vector<double> origin);
  static LatticeField from_field(const CField2D& f);

  std::size_t rank() const noexcept { return dims.size(); }
  double coord(std::size_t axis, std::size_t i) const {
    return (static_cast<double>(i) - origin[axis]) * steps[axis];
  }
  double cell() const;
  std::size_t flat(std::span<const std::size_t> idx) const;
};

/// Full (non-periodic) convolution Σ F(y) G(z-y) dy computed by FFT; the result
/// covers every lattice point where the two supports overlap.
LatticeField linear_convolution(const LatticeField& f, const LatticeField& g);

/// (∫(∫|F|^p m^p d inner)^{q/p} d outer)^{1/q}, with sup at ∞, for rank-2 fields.
/// inner_x integrates over axis 0 first.
double mixed_norm(const LatticeField& f, const MixedNormSpec& spec);
double mixed_norm(const CField2D& f, const MixedNormSpec& spec);

/// sup_z ∫|F(z,ζ)| m(ζ) dζ for a rank-4 field ordered (z₁, z₂, ζ₁, ζ₂).
double linf_l1_norm(const LatticeField& f, const Weight& m);

/// (∫|F(z,ζ)|^p m(ζ)^p dz dζ)^{1/p} for a rank-4 field: the L^p_{1⊗m} norm.
double lp_norm_zeta_weighted(const LatticeField& f, double p, const Weight& m);

/// ‖V_g f‖ in L^{p,q}_m with modulation order; the STFT runs on dual_of(f.grid()).
double modulation_norm(const CSignal& f, const CSignal& window, double p, double q,
                       const Weight& m);

/// ‖f‖ in W(ℱL^p_u, L^q_w): ‖ ‖V_g f(x,·) u‖_{L^p} w(x) ‖_{L^q}.
double wiener_amalgam_norm(const CSignal& f, const CSignal& window, double p, double q,
                           const Weight& u, const Weight& w);

/// One mixed norm of a four-variable STFT V_Φ a(z,ζ) of a symbol a on the plane.
/// inner_xi integrates over ζ first (Wiener amalgam of the symbol), inner_x over
/// z first (modulation space of the symbol). The weight is z_weight(z)·zeta_weight(ζ).
struct SymbolNormSpec {
  double p = 2.0;
  double q = 2.0;
  NormOrder order = NormOrder::inner_xi;
  Weight z_weight = Weight::constant();
  Weight zeta_weight = Weight::constant();
};

/// Sampling plan for V_Φ a with Φ(x,ξ) = e^{-π(x²+ξ²)}.
///
/// The symbol lives on symbol_grid; ζ runs over the dual lattices of both axes and
/// z over every z_stride-th symbol sample per axis. The defaults are 128 symbol
/// samples per axis on x in [-8,8), ξ in [-4,4), and 64 z samples per axis.
struct SymbolStftPlan {
  PhaseGrid symbol_grid = PhaseGrid::dual_of(Grid1D(128, 16.0));
  std::size_t z_stride = 2;
};

/// Streams over z, computing one 2-D FFT per z, and reduces every requested norm
/// in the same pass. Returns one value per spec in order.
std::vector<double> symbol_stft_norms(const CField2D& symbol, const SymbolStftPlan& plan,
                                      std::span<const SymbolNormSpec> specs);

/// Materializes V_Φ a on a small plan (tests and diagnostics only).
LatticeField symbol_stft_field(const CField2D& symbol, const SymbolStftPlan& plan);

/// α_{(r₁,r₂)}(τ) = τ^{-d(1/r₁' + 1/r₂)} (1-τ)^{-d(1/r₁ + 1/r₂')}, 1/∞ = 0, τ in (0,1).
double alpha(double r1, double r2, double tau, int d = 1);

/// Hölder conjugate exponent, with 1' = ∞ and ∞' = 1.
double conjugate_exponent(double p);

}  // namespace tfq
