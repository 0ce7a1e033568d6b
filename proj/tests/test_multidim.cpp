#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "psical/calculus.hpp"
#include "psical/fft.hpp"
#include "psical/shear.hpp"
#include "psical/stft.hpp"

// The acceptance surface fixes d = 1; these smoke checks keep the d-generic
// code paths honest on 2-D grids.

using namespace psical;

namespace {

Field gaussian_2d(const Grid& g) {
  return Field::sample(g, std::vector<AxisRole>(2, AxisRole::Space),
                       [](std::span<const double> x) {
                         return cplx{std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])), 0.0};
                       });
}

}  // namespace

TEST_CASE("2-D transform: Gaussian closed form, unitarity, roundtrip") {
  Grid g = make_cube_grid(2, 10.0, 64);
  Field f = gaussian_2d(g);
  Field F = fourier_all(f, FtDirection::Forward);

  double worst = 0.0;
  std::vector<double> pt(2);
  for (std::size_t i = 0; i < F.size(); ++i) {
    F.grid().coords(i, pt);
    double expect = std::exp(-0.5 * (pt[0] * pt[0] + pt[1] * pt[1]));
    worst = std::max(worst, std::abs(F[i] - cplx{expect, 0.0}));
  }
  CHECK(worst < 1e-12);
  CHECK(F.l2_norm() == doctest::Approx(f.l2_norm()).epsilon(1e-12));
  CHECK(max_abs_diff(fourier_all(F, FtDirection::Inverse), f) < 1e-13);
}

TEST_CASE("uncentered axes are rejected by the transform") {
  Grid g = make_grid_1d(1.0, 8.0, 32);
  Field f = Field::sample(g, {AxisRole::Space}, [](std::span<const double> x) {
    return cplx{std::exp(-x[0] * x[0]), 0.0};
  });
  CHECK_THROWS_AS((void)fourier_all(f, FtDirection::Forward), Error);
}

TEST_CASE("2-D window, Moyal identity and inversion") {
  Grid g = make_cube_grid(2, 8.0, 32);
  Field phi = gaussian_window(g);
  CHECK(phi.l2_norm() == doctest::Approx(1.0).epsilon(1e-8));

  MixedNormSpec l22;
  l22.p = 2.0;
  l22.q = 2.0;
  CHECK(mod_norm(phi, phi, l22) == doctest::Approx(1.0).epsilon(1e-8));

  Field f = gaussian_2d(g);
  Field back = istft(stft(f, phi));
  Field diff = back;
  diff -= f;
  CHECK(diff.l2_norm() / f.l2_norm() < 1e-10);
}

TEST_CASE("2-D shear against direct evaluation") {
  // F(x + A y, y) on a 4-axis field with d = 2 blocks, A coupling both axes
  Grid g = make_cube_grid(4, 6.0, 32);
  Field F = Field::sample(g, std::vector<AxisRole>(4, AxisRole::Space),
                          [](std::span<const double> p) {
                            double q = 0.0;
                            for (double v : p) q += v * v;
                            return cplx{std::exp(-q), 0.0};
                          });
  Mat A(2, {0.5, 0.25, 0.0, 0.5});
  Field S = shear(F, A, +1);
  // check at (x, y) = ((0,0), (1.5,-1.5)): x + A y = (0.375, -0.75), off-lattice
  auto idx = [&](double t) {
    return static_cast<std::size_t>(std::round((t + 6.0) / g.axis(0).spacing()));
  };
  std::size_t flat = ((idx(0.0) * 32 + idx(0.0)) * 32 + idx(1.5)) * 32 + idx(-1.5);
  double expect = std::exp(-(0.375 * 0.375 + 0.75 * 0.75 + 2.25 + 2.25));
  CHECK(std::abs(S[flat] - cplx{expect, 0.0}) < 1e-6);
}

TEST_CASE("2-D quantization: op(1) is the identity and Weyl is Hermitian") {
  Grid g = make_cube_grid(2, 6.0, 24);
  std::vector<Axis> axes = g.axes();
  for (std::size_t i = 0; i < 2; ++i) axes.push_back(g.axis(i).dual());
  Grid sg(std::move(axes));
  std::vector<AxisRole> roles = {AxisRole::Space, AxisRole::Space, AxisRole::Frequency,
                                 AxisRole::Frequency};

  Field one = Field::constant(sg, roles, {1.0, 0.0});
  OperatorMatrix M = op_matrix(one, QuantizationMatrix::weyl(2));
  double worst = 0.0;
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      worst = std::max(worst, std::abs(M.at(i, j) - (i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0})));
  CHECK(worst < 1e-10);

  Field a = Field::sample(sg, roles, [](std::span<const double> p) {
    double q = 0.0;
    for (double v : p) q += v * v;
    return cplx{std::exp(-0.5 * q), 0.0};
  });
  OperatorMatrix Mw = op_matrix(a, QuantizationMatrix::weyl(2));
  CHECK(Mw.hermitian_defect() < 1e-7);

  // transfer roundtrip with a non-diagonal 2x2 coupling
  Mat A(2, {0.3, 0.1, -0.2, 0.4});
  Field back = transfer(transfer(a, A, +1), A, -1);
  CHECK(max_abs_diff(back, a) < 1e-10);
}
