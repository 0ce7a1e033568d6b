#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "psical/hermite.hpp"
#include "psical/stft.hpp"

using namespace psical;

namespace {

// Closed-form STFT of the normalized Gaussian window against itself:
// V(x, xi) = (2 pi)^(-1/2) e^{-(x^2 + xi^2)/4} e^{-i x xi / 2}.
cplx vphiphi(double x, double xi) {
  double mag = std::exp(-0.25 * (x * x + xi * xi)) / std::sqrt(2.0 * std::numbers::pi);
  return mag * std::polar(1.0, -0.5 * x * xi);
}

}  // namespace

TEST_CASE("gaussian window values and normalization") {
  Grid g = make_grid_1d(0.0, 10.0, 256);
  Field phi = gaussian_window(g);
  // peak value pi^(-1/4) at x = 0
  CHECK(std::abs(phi[128] - cplx{std::pow(std::numbers::pi, -0.25), 0.0}) < 1e-15);
  CHECK(phi.l2_norm() == doctest::Approx(1.0).epsilon(1e-12));
  // evenness: phi(-x0) == phi(x0)
  CHECK(phi[128 - 17] == phi[128 + 17]);
}

TEST_CASE("stft of the Gaussian window matches the closed form, phase included") {
  Grid g = make_grid_1d(0.0, 10.0, 256);
  Field phi = gaussian_window(g);
  StftData V = stft(phi, phi);

  const Grid& pg = V.values.grid();
  double worst = 0.0;
  for (std::size_t m = 0; m < 256; ++m) {
    double x = pg.axis(0).point(m);
    if (std::abs(x) > 10.0 / 3.0) continue;
    for (std::size_t k = 0; k < 256; ++k) {
      double xi = pg.axis(1).point(k);
      if (std::abs(xi) > pg.axis(1).halfwidth / 3.0) continue;
      worst = std::max(worst, std::abs(V.values[m * 256 + k] - vphiphi(x, xi)));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("stft of zero is zero; zero window is rejected") {
  Grid g = make_grid_1d(0.0, 8.0, 64);
  Field phi = gaussian_window(g);
  Field zero = Field::zeros(g, {AxisRole::Space});
  StftData V = stft(zero, phi);
  CHECK(V.values.max_abs() == 0.0);
  CHECK_THROWS_AS((void)stft(phi, zero), Error);
}

TEST_CASE("translation covariance is an exact index shift") {
  Grid g = make_grid_1d(0.0, 10.0, 128);
  Field phi = gaussian_window(g);
  // f = phi shifted by one grid step (cyclic roll)
  std::vector<cplx> rolled(128);
  for (std::size_t j = 0; j < 128; ++j) rolled[j] = phi[(j + 127) % 128];
  Field f(g, {AxisRole::Space}, std::move(rolled));

  StftData Vphi = stft(phi, phi);
  StftData Vf = stft(f, phi);
  double worst = 0.0;
  for (std::size_t m = 0; m < 128; ++m)
    for (std::size_t k = 0; k < 128; ++k)
      worst = std::max(worst, std::abs(std::abs(Vf.values[((m + 1) % 128) * 128 + k]) -
                                       std::abs(Vphi.values[m * 128 + k])));
  CHECK(worst < 1e-14);
}

TEST_CASE("|V_phi f| invariant under unimodular scaling; linearity") {
  Grid g = make_grid_1d(0.0, 8.0, 64);
  Field phi = gaussian_window(g);
  Field f = hermite_function(2, g);
  StftData V1 = stft(f, phi);
  Field fu = f;
  fu *= std::polar(1.0, 1.234);
  StftData V2 = stft(fu, phi);
  double worst = 0.0;
  for (std::size_t i = 0; i < V1.values.size(); ++i)
    worst = std::max(worst, std::abs(std::abs(V1.values[i]) - std::abs(V2.values[i])));
  CHECK(worst < 1e-15);

  // conjugate-linearity in the window, linearity in f, spot-checked
  cplx a{0.7, -0.4};
  Field fa = f;
  fa *= a;
  StftData V3 = stft(fa, phi);
  Field phib = phi;
  phib *= a;
  StftData V4 = stft(f, phib);
  double w2 = 0.0;
  for (std::size_t i = 0; i < V1.values.size(); ++i) {
    w2 = std::max(w2, std::abs(V3.values[i] - a * V1.values[i]));
    w2 = std::max(w2, std::abs(V4.values[i] - std::conj(a) * V1.values[i]));
  }
  CHECK(w2 < 1e-14);
}

TEST_CASE("istft inverts stft") {
  Grid g = make_grid_1d(0.0, 10.0, 256);
  Field phi = gaussian_window(g);

  SUBCASE("Gaussian roundtrip") {
    Field f = gaussian_window(g);
    Field back = istft(stft(f, phi));
    double rel = 0.0, n = f.l2_norm();
    Field diff = back;
    diff -= f;
    rel = diff.l2_norm() / n;
    CHECK(rel < 1e-10);
  }

  SUBCASE("first Hermite function roundtrip") {
    Field f = hermite_function(1, g);
    Field back = istft(stft(f, phi));
    Field diff = back;
    diff -= f;
    CHECK(diff.l2_norm() / f.l2_norm() < 1e-10);
  }

  SUBCASE("zero data inverts to the zero field") {
    StftData V = stft(gaussian_window(g), phi);
    std::fill(V.values.values().begin(), V.values.values().end(), cplx{0.0, 0.0});
    Field back = istft(V);
    CHECK(back.max_abs() == 0.0);
  }

  SUBCASE("inconsistent data is rejected") {
    StftData V = stft(phi, phi);
    V.window_l2 *= 2.0;
    CHECK_THROWS_AS((void)istft(V), Error);
  }
}

TEST_CASE("discrete Moyal identity and mod_norm") {
  Grid g = make_grid_1d(0.0, 10.0, 256);
  Field phi = gaussian_window(g);

  SUBCASE("p = q = 2, unit weight on V_phi phi gives 1") {
    MixedNormSpec spec;
    spec.p = 2.0;
    spec.q = 2.0;
    CHECK(mod_norm(phi, phi, spec) == doctest::Approx(1.0).epsilon(1e-8));
  }

  SUBCASE("Moyal for Hermite functions") {
    MixedNormSpec spec;
    spec.p = 2.0;
    spec.q = 2.0;
    for (std::size_t k = 0; k < 4; ++k) {
      Field f = hermite_function(k, g);
      double mn = mod_norm(f, phi, spec);
      CHECK(mn == doctest::Approx(f.l2_norm() * phi.l2_norm()).epsilon(1e-8));
    }
  }

  SUBCASE("p = q = inf picks the peak of |V_phi phi|") {
    MixedNormSpec spec;
    spec.p = kInfExponent;
    spec.q = kInfExponent;
    CHECK(mod_norm(phi, phi, spec) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-8));
  }

  SUBCASE("f = 0 gives 0") {
    MixedNormSpec spec;
    CHECK(mod_norm(Field::zeros(g, {AxisRole::Space}), phi, spec) == 0.0);
  }
}

TEST_CASE("hermite functions are orthonormal on the grid") {
  Grid g = make_grid_1d(0.0, 12.0, 256);
  auto hs = hermite_set(6, g);
  const double cell = g.cell_measure();
  for (std::size_t a = 0; a < hs.size(); ++a) {
    for (std::size_t b = a; b < hs.size(); ++b) {
      cplx ip{0.0, 0.0};
      for (std::size_t j = 0; j < 256; ++j) ip += hs[a][j] * std::conj(hs[b][j]);
      ip *= cell;
      if (a == b)
        CHECK(std::abs(ip - cplx{1.0, 0.0}) < 1e-12);
      else
        CHECK(std::abs(ip) < 1e-12);
    }
  }
}
