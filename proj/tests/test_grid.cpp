#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tfq/gaussian.hpp"
#include "tfq/grid.hpp"

using tfq::cplx;
using tfq::Grid1D;

namespace {

double max_err(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid rejects bad sizes and lengths") {
  CHECK_THROWS_AS(Grid1D(100, 16.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D(0, 16.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D(256, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D(256, -1.0), std::invalid_argument);
  CHECK_NOTHROW(Grid1D(1, 1.0));
}

TEST_CASE("lattice points and dual grid") {
  const Grid1D g(256, 16.0);
  CHECK(g.step() == doctest::Approx(1.0 / 16.0));
  CHECK(g.point(0) == doctest::Approx(-8.0));
  CHECK(g.point(128) == 0.0);
  CHECK(g.point(255) == doctest::Approx(8.0 - 1.0 / 16.0));

  const Grid1D d = tfq::make_dual_grid(g);
  CHECK(d.size() == 256);
  CHECK(d.step() == doctest::Approx(1.0 / 16.0));
  CHECK(d == g);  // N = 256, L = 16 is self-dual

  const Grid1D s(8, 4.0, true);
  CHECK(s.point(0) == doctest::Approx(-1.75));
  CHECK(s.point(4) == doctest::Approx(0.25));
  CHECK(tfq::make_dual_grid(s).step() == doctest::Approx(0.25));
  CHECK_FALSE(tfq::make_dual_grid(s).shifted());

  CHECK(g.index_of(0.5).value() == 136);
  CHECK_FALSE(g.index_of(0.51).has_value());
  CHECK_FALSE(g.index_of(8.0).has_value());
  CHECK(g.in_window(-8.0));
  CHECK_FALSE(g.in_window(8.0));
}

TEST_CASE("inner products of Gaussians") {
  const Grid1D g(256, 16.0);
  const auto phi = tfq::gaussian_signal(g);
  CHECK(std::abs(tfq::inner_product(phi, phi) - cplx(1.0 / std::sqrt(2.0))) < 1e-13);
  const auto h0 = tfq::hermite_signal(0, g);
  const auto h1 = tfq::hermite_signal(1, g);
  CHECK(std::abs(tfq::inner_product(h0, h0) - 1.0) < 1e-13);
  CHECK(std::abs(tfq::inner_product(h0, h1)) < 1e-13);
  CHECK_THROWS_AS(tfq::inner_product(phi, tfq::gaussian_signal(Grid1D(128, 16.0))), std::invalid_argument);
}

TEST_CASE("offset DFT matches the direct sum") {
  std::vector<cplx> in(16);
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = cplx(std::sin(0.3 * i + 0.1), std::cos(1.7 * i));
  for (double a : {0.0, -8.0, -7.5}) {
    for (double b : {0.0, -8.0}) {
      std::vector<cplx> out(16);
      tfq::fft::offset_dft(in, out, tfq::fft::Direction::Forward, a, b, 0.5);
      CHECK(max_err(out, oracle::offset_dft(in, -1.0, a, b, 0.5)) < 1e-12);
      tfq::fft::offset_dft(in, out, tfq::fft::Direction::Backward, a, b, 1.0);
      CHECK(max_err(out, oracle::offset_dft(in, 1.0, a, b, 1.0)) < 1e-12);
    }
  }
}

TEST_CASE("Fourier transform of sampled signals") {
  for (bool shifted : {false, true}) {
    const Grid1D g(256, 16.0, shifted);
    const auto phi = tfq::gaussian_signal(g);
    const auto F = tfq::fourier_transform(phi);
    CHECK(F.grid() == tfq::make_dual_grid(g));
    double err = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
      const double xi = F.grid().point(k);
      err = std::max(err, std::abs(F[k] - std::exp(-oracle::pi * xi * xi)));
    }
    CHECK(err < 1e-12);

    const auto sg = tfq::named_signal("shifted-gaussian", g);
    const auto G = tfq::fourier_transform(sg);
    const auto fn = sg.evaluator();
    for (std::size_t k : {100u, 128u, 140u}) {
      const cplx want = oracle::fourier(fn, G.grid().point(k));
      CHECK(std::abs(G[k] - want) < 1e-10);
    }
  }
}

TEST_CASE("Parseval and reflection") {
  const Grid1D g(256, 16.0);
  for (const char* name : {"gaussian", "hermite3", "shifted-gaussian", "chirp-gaussian"}) {
    const auto f = tfq::named_signal(name, g);
    const auto h = tfq::named_signal("hermite2", g);
    const auto Ff = tfq::fourier_transform(f);
    const auto Fh = tfq::fourier_transform(h);
    CHECK(std::abs(tfq::inner_product(f, h) - tfq::inner_product(Ff, Fh)) < 1e-10);
    const auto FFf = tfq::fourier_transform(Ff);
    double err = 0.0;
    for (std::size_t n = 1; n < g.size(); ++n) err = std::max(err, std::abs(FFf[n] - f[g.size() - n]));
    CHECK(err < 1e-10);
    CHECK(max_err(tfq::inverse_fourier(Ff).samples(), f.samples()) < 1e-12);
  }
}

TEST_CASE("inverse transform onto a shifted target") {
  const Grid1D g(64, 8.0, true);
  const auto h = tfq::hermite_signal(1, g);
  const auto back = tfq::inverse_fourier(tfq::fourier_transform(h), g);
  CHECK(back.grid() == g);
  CHECK(max_err(back.samples(), h.samples()) < 1e-12);
  CHECK_THROWS_AS(tfq::inverse_fourier(tfq::fourier_transform(h), Grid1D(64, 4.0)), std::invalid_argument);
}

TEST_CASE("2-D transform round trip") {
  const tfq::PhaseGrid pg{Grid1D(32, 8.0), Grid1D(64, 8.0)};
  const tfq::PhaseGrid wide{Grid1D(64, 8.0), Grid1D(64, 8.0)};
  const auto f = tfq::CField2D::from_function(
      pg, [](double x, double xi) { return cplx(std::exp(-oracle::pi * (x * x + 2.0 * xi * xi)), x * xi); });
  const auto F = tfq::fourier_transform_2d(f);
  const auto back = tfq::inverse_fourier_2d(F, pg);
  CHECK(max_err(back.values(), f.values()) < 1e-12);
  // ℱ of e^{-π(x²+ξ²)} is itself.
  const auto gauss = tfq::CField2D::from_function(
      wide, [](double x, double xi) { return cplx(std::exp(-oracle::pi * (x * x + xi * xi))); });
  const auto G = tfq::fourier_transform_2d(gauss);
  double err = 0.0;
  for (std::size_t i = 0; i < G.rows(); ++i)
    for (std::size_t j = 0; j < G.cols(); ++j) {
      const double a = G.grid().x.point(i), b = G.grid().xi.point(j);
      err = std::max(err, std::abs(G(i, j) - std::exp(-oracle::pi * (a * a + b * b))));
    }
  CHECK(err < 1e-10);
}

TEST_CASE("resampling") {
  const Grid1D g(256, 16.0);
  const auto h = tfq::hermite_signal(2, g);
  const auto bare = h.sampled_only();
  CHECK_FALSE(bare.has_evaluator());

  SUBCASE("lattice points are reproduced exactly") {
    const std::vector<double> pts = {g.point(3), g.point(128), g.point(200)};
    const auto r = tfq::resample(bare, pts);
    CHECK(r.values[0] == h[3]);
    CHECK(r.values[1] == h[128]);
    CHECK(r.values[2] == h[200]);
    CHECK_FALSE(r.out_of_window);
  }
  SUBCASE("off-lattice points follow the band-limited interpolant") {
    const std::vector<double> pts = {0.01, -0.7321, 1.23456, 2.5 + g.step() / 3.0};
    const auto r = tfq::resample(bare, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
      CHECK(std::abs(r.values[i] - tfq::hermite_value(2, pts[i])) < 1e-8);
  }
  SUBCASE("points outside the window raise the flag") {
    const std::vector<double> pts = {0.0, 8.0, -9.0};
    const auto r = tfq::resample(bare, pts);
    CHECK(r.out_of_window);
    CHECK(r.values[1] == cplx(0.0));
    CHECK(r.values[2] == cplx(0.0));
  }
  SUBCASE("the evaluator is used when present") {
    const std::vector<double> pts = {0.123};
    CHECK(tfq::resample(h, pts).values[0] == tfq::hermite_value(2, 0.123));
  }
  CHECK_THROWS_AS(tfq::Resampler(bare, 0), std::invalid_argument);
}
