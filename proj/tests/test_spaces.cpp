#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "tfq/gaussian.hpp"
#include "tfq/pseudodiff.hpp"
#include "tfq/spaces.hpp"

using tfq::cplx;
using tfq::Grid1D;
using tfq::LatticeField;
using tfq::NormOrder;
using tfq::PhaseGrid;
using tfq::Weight;

namespace {

const PhaseGrid& plane() {
  static const PhaseGrid pg = PhaseGrid::dual_of(Grid1D(256, 16.0));
  return pg;
}

tfq::CField2D gaussian_field(const PhaseGrid& pg) {
  return tfq::CField2D::from_function(
      pg, [](double x, double xi) { return cplx(std::exp(-oracle::pi * (x * x + xi * xi))); });
}

LatticeField product_gaussian_4d(std::size_t n, double step) {
  const double o = static_cast<double>(n / 2);
  auto f = LatticeField::zeros({n, n, n, n}, {step, step, step, step}, {o, o, o, o});
  std::size_t k = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          const double r2 = std::pow(f.coord(0, a), 2) + std::pow(f.coord(1, b), 2) + std::pow(f.coord(2, c), 2) +
                            std::pow(f.coord(3, d), 2);
          f.data[k++] = std::exp(-oracle::pi * r2);
        }
  return f;
}

}  // namespace

TEST_CASE("weights") {
  CHECK(Weight::radial_poly(2.0)(1.0, 0.0) == 4.0);
  CHECK(Weight::constant()(3.0, -7.0) == 1.0);
  CHECK(Weight::separable_poly(1.0, 2.0).composed_with_J()(3.0, 5.0) == 96.0);
  CHECK(Weight::exponential(0.5)(3.0, 4.0) == doctest::Approx(std::exp(2.5)));
  CHECK(Weight::radial_poly(2.0).reciprocal()(1.0, 0.0) == 0.25);
  CHECK_FALSE(Weight::radial_poly(1.0).reciprocal().reciprocal().is_reciprocal());
  CHECK_THROWS(Weight::radial_poly(-1.0));
  CHECK_THROWS(Weight::exponential(1.5));

  SUBCASE("J-composition") {
    const auto v = Weight::radial_poly(1.5);
    const auto sep = Weight::separable_poly(1.0, 3.0);
    for (auto [a, b] : {std::pair{0.3, -2.0}, {4.0, 1.0}, {-1.5, -0.5}}) {
      CHECK(v.composed_with_J()(a, b) == doctest::Approx(v(a, b)));
      CHECK(sep.composed_with_J()(a, b) == doctest::Approx(sep(b, -a)));
      // v_J(Jz) = v(-z) = v(z)
      CHECK(sep.composed_with_J()(b, -a) == doctest::Approx(sep(a, b)));
    }
  }

  SUBCASE("exponential weight eventually dominates a polynomial one along a ray") {
    const auto e = Weight::exponential(1.0);
    const auto p = Weight::radial_poly(3.0);
    CHECK(e(1.0, 0.0) < p(1.0, 0.0));
    for (double r = 12.0; r < 200.0; r *= 1.5) CHECK(e(r * 0.6, r * 0.8) > p(r * 0.6, r * 0.8));
  }

  SUBCASE("submultiplicative, and the reciprocal is moderate") {
    const std::vector<Weight> kinds = {Weight::constant(), Weight::radial_poly(2.5),
                                       Weight::separable_poly(1.0, 0.5), Weight::exponential(0.7)};
    for (const auto& v : kinds) {
      const auto inv = v.reciprocal();
      for (std::uint64_t i = 0; i < 1000; ++i) {
        const double x1 = 20.0 * tfq::uniform01(7, 4 * i) - 10.0, x2 = 20.0 * tfq::uniform01(7, 4 * i + 1) - 10.0;
        const double y1 = 20.0 * tfq::uniform01(7, 4 * i + 2) - 10.0, y2 = 20.0 * tfq::uniform01(7, 4 * i + 3) - 10.0;
        CHECK(v(x1 + y1, x2 + y2) <= v(x1, x2) * v(y1, y2) * (1.0 + 1e-12));
        CHECK(inv(x1 + y1, x2 + y2) <= v(y1, y2) * inv(x1, x2) * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("mixed norms of the Gaussian") {
  const auto F = gaussian_field(plane());
  using tfq::inf;
  CHECK(tfq::mixed_norm(F, {2.0, 2.0}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(tfq::mixed_norm(F, {inf, inf}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tfq::mixed_norm(F, {1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tfq::mixed_norm(F, {1.0, inf, Weight::constant(), NormOrder::inner_xi}) == doctest::Approx(1.0).epsilon(1e-12));
  // (∫(∫e^{-πx²}dx)^2 e^{-2πξ²} dξ)^{1/2} with p=1 inside and q=2 outside.
  CHECK(tfq::mixed_norm(F, {1.0, 2.0}) == doctest::Approx(std::pow(0.5, 0.25)).epsilon(1e-12));
  CHECK_THROWS(tfq::mixed_norm(F, {0.5, 2.0}));
}

TEST_CASE("modulation and Wiener amalgam norms") {
  const Grid1D g(256, 16.0);
  const auto phi = tfq::gaussian_signal(g);
  const auto h1 = tfq::hermite_signal(1, g);
  const auto one = Weight::constant();
  CHECK(tfq::modulation_norm(phi, phi, 2.0, 2.0, one) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(tfq::modulation_norm(phi, h1, 2.0, 2.0, one) == doctest::Approx(phi.l2_norm() * h1.l2_norm()).epsilon(1e-12));
  const double m11 = tfq::modulation_norm(phi, phi, 1.0, 1.0, one);
  const double m22 = tfq::modulation_norm(phi, phi, 2.0, 2.0, one);
  const double mii = tfq::modulation_norm(phi, phi, tfq::inf, tfq::inf, one);
  CHECK(m11 >= m22);
  CHECK(m22 >= mii);

  const auto F = tfq::fourier_transform(phi);
  for (auto [p, q] : {std::pair{2.0, 2.0}, {1.0, tfq::inf}}) {
    const double m = tfq::modulation_norm(phi, phi, p, q, one);
    const double w = tfq::wiener_amalgam_norm(F, phi, p, q, one, one);
    CHECK(std::abs(m - w) / m < 1e-6);
  }
}

TEST_CASE("symbol STFT norms") {
  tfq::SymbolStftPlan plan;
  plan.symbol_grid = PhaseGrid::dual_of(Grid1D(32, 8.0));
  plan.z_stride = 1;
  const auto a = gaussian_field(plan.symbol_grid);
  const std::vector<tfq::SymbolNormSpec> specs = {
      {2.0, 2.0, NormOrder::inner_xi}, {2.0, 2.0, NormOrder::inner_x}, {tfq::inf, tfq::inf, NormOrder::inner_xi}};
  const auto norms = tfq::symbol_stft_norms(a, plan, specs);
  CHECK(std::abs(norms[0] - norms[1]) / norms[1] < 1e-6);

  // The streamed reductions agree with the materialized field.
  const LatticeField V = tfq::symbol_stft_field(a, plan);
  CHECK(V.rank() == 4);
  double acc = 0.0, peak = 0.0, origin = 0.0;
  for (std::size_t k = 0; k < V.data.size(); ++k) {
    acc += std::norm(V.data[k]);
    peak = std::max(peak, std::abs(V.data[k]));
  }
  std::vector<std::size_t> zero_idx(4);
  for (std::size_t ax = 0; ax < 4; ++ax) zero_idx[ax] = static_cast<std::size_t>(V.origin[ax]);
  origin = std::abs(V.data[V.flat(zero_idx)]);
  CHECK(norms[0] == doctest::Approx(std::sqrt(acc * V.cell())).epsilon(1e-12));
  CHECK(norms[2] == doctest::Approx(peak).epsilon(1e-12));
  CHECK(peak == doctest::Approx(origin).epsilon(1e-12));
  // |V_Φ Φ(0,0)| = ∫e^{-2π|w|²}dw = 1/2.
  CHECK(origin == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("L-infinity L1 and zeta-weighted Lp norms of 4-D fields") {
  const auto F = product_gaussian_4d(32, 0.25);
  CHECK(tfq::linf_l1_norm(F, Weight::constant()) == doctest::Approx(1.0).epsilon(1e-5));

  double lattice = 0.0;
  for (std::size_t c = 0; c < 32; ++c)
    for (std::size_t d = 0; d < 32; ++d) {
      const double u = F.coord(2, c), v = F.coord(3, d);
      lattice += std::exp(-oracle::pi * (u * u + v * v)) * (1.0 + std::hypot(u, v));
    }
  lattice *= 0.0625;
  const double radial = tfq::linf_l1_norm(F, Weight::radial_poly(1.0));
  CHECK(radial == doctest::Approx(lattice).epsilon(1e-12));
  CHECK(radial == doctest::Approx(1.5).epsilon(1e-2));  // 1 + ∫2πr²e^{-πr²}dr

  auto G = F;
  for (auto& v : G.data) v *= 2.0;
  CHECK(tfq::linf_l1_norm(G, Weight::constant()) == doctest::Approx(2.0 * tfq::linf_l1_norm(F, Weight::constant())));
  // ∫e^{-2π(|z|²+|ζ|²)} = 1/4.
  CHECK(tfq::lp_norm_zeta_weighted(F, 2.0, Weight::constant()) == doctest::Approx(0.5).epsilon(1e-5));
  CHECK_THROWS(tfq::linf_l1_norm(LatticeField::zeros({2, 2}, {1, 1}, {0, 0}), Weight::constant()));
}

TEST_CASE("linear convolution") {
  auto f = LatticeField::zeros({3, 4}, {0.5, 0.25}, {1.0, 2.0});
  auto g = LatticeField::zeros({5, 2}, {0.5, 0.25}, {2.0, 0.0});
  for (std::size_t k = 0; k < f.data.size(); ++k) f.data[k] = cplx(std::sin(k + 1.0), 0.1 * k);
  for (std::size_t k = 0; k < g.data.size(); ++k) g.data[k] = cplx(std::cos(2.0 * k), -0.3);
  const auto h = tfq::linear_convolution(f, g);
  REQUIRE(h.dims == std::vector<std::size_t>{7, 5});
  CHECK(h.origin[0] == 3.0);
  CHECK(h.origin[1] == 2.0);
  for (std::size_t a = 0; a < 7; ++a)
    for (std::size_t b = 0; b < 5; ++b) {
      cplx want = 0.0;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          if (a >= i && a - i < 5 && b >= j && b - j < 2) want += f.data[i * 4 + j] * g.data[(a - i) * 2 + (b - j)];
      CHECK(std::abs(h.data[a * 5 + b] - want * 0.125) < 1e-13);
    }
  auto bad = g;
  bad.steps[0] = 0.4;
  CHECK_THROWS(tfq::linear_convolution(f, bad));
}

TEST_CASE("Young inequality for mixed norms") {
  const std::size_t n = 12;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    auto f = LatticeField::zeros({n, n}, {0.25, 0.25}, {6.0, 6.0});
    auto g = LatticeField::zeros({n, n}, {0.25, 0.25}, {6.0, 6.0});
    for (std::size_t k = 0; k < n * n; ++k) {
      f.data[k] = cplx(tfq::uniform01(trial, 2 * k) - 0.5, tfq::uniform01(trial + 100, k));
      g.data[k] = cplx(tfq::uniform01(trial + 200, k), tfq::uniform01(trial + 300, k) - 0.5);
    }
    const auto h = tfq::linear_convolution(f, g);
    const auto v = Weight::radial_poly(1.0);
    const auto m = Weight::radial_poly(0.5);
    // 1/1 + 1/2 = 1 + 1/2 in both slots.
    const double lhs = tfq::mixed_norm(h, {2.0, 2.0, m});
    const double rhs = tfq::mixed_norm(f, {1.0, 1.0, v}) * tfq::mixed_norm(g, {2.0, 2.0, m});
    CHECK(lhs <= rhs * (1.0 + 1e-10));
    // 1/2 + 1/2 = 1 + 1/∞.
    const double lhs_inf = tfq::mixed_norm(h, {tfq::inf, tfq::inf});
    CHECK(lhs_inf <= tfq::mixed_norm(f, {2.0, 2.0}) * tfq::mixed_norm(g, {2.0, 2.0}) * (1.0 + 1e-10));
  }
}

TEST_CASE("alpha") {
  CHECK(tfq::alpha(2.0, 2.0, 0.5) == 4.0);
  for (double tau : {0.01, 0.2, 0.5, 0.8, 0.99}) {
    CHECK(tfq::alpha(1.0, tfq::inf, tau) == doctest::Approx(std::pow(1.0 - tau, -2.0)).epsilon(1e-14));
    CHECK(tfq::alpha(tfq::inf, 1.0, tau) == doctest::Approx(std::pow(tau, -2.0)).epsilon(1e-14));
    CHECK(tfq::alpha(2.0, 2.0, tau, 2) == doctest::Approx(std::pow(tfq::alpha(2.0, 2.0, tau), 2.0)).epsilon(1e-14));
  }
  CHECK(tfq::alpha(1.0, tfq::inf, 1e-9) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(tfq::alpha(1.0, tfq::inf, 1.0 - 1e-6) > 1e11);
  CHECK(tfq::alpha(tfq::inf, 1.0, 1e-6) > 1e11);
  CHECK_THROWS(tfq::alpha(2.0, 2.0, 0.0));
  CHECK_THROWS(tfq::alpha(2.0, 2.0, 1.0));
  CHECK_THROWS(tfq::alpha(0.5, 2.0, 0.5));

  CHECK(tfq::conjugate_exponent(2.0) == 2.0);
  CHECK(tfq::conjugate_exponent(4.0) == doctest::Approx(4.0 / 3.0));
  CHECK(std::isinf(tfq::conjugate_exponent(1.0)));
  CHECK(tfq::conjugate_exponent(tfq::inf) == 1.0);
}
