#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "psical/calculus.hpp"
#include "psical/symbol_classes.hpp"

using namespace psical;

namespace {

Field gaussian_symbol(const Grid& xgrid, double width = 1.0) {
  return symbol_grid_field(xgrid, [width](double x, double xi) {
    return cplx{std::exp(-0.5 * (x * x + xi * xi) / (width * width)), 0.0};
  });
}

Field unit_symbol(const Grid& xgrid) {
  return symbol_grid_field(xgrid, [](double, double) { return cplx{1.0, 0.0}; });
}

double rel_op_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix d = a;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) d.at(i, j) -= b.at(i, j);
  return d.inf_norm() / a.inf_norm();
}

}  // namespace

TEST_CASE("transfer basics") {
  Grid g = make_grid_1d(0.0, 10.0, 64);
  Field a = gaussian_symbol(g);

  SUBCASE("A = 0 is the identity") {
    CHECK(max_abs_diff(transfer(a, Mat::zero(1), +1), a) == 0.0);
  }

  SUBCASE("transfer then inverse transfer restores the symbol") {
    Mat A(1, {0.5});
    Field back = transfer(transfer(a, A, +1), A, -1);
    CHECK(max_abs_diff(back, a) < 1e-10);
  }

  SUBCASE("composition of transfers adds the matrices") {
    Mat A(1, {0.3}), B(1, {0.2}), AB(1, {0.5});
    Field two = transfer(transfer(a, A, +1), B, +1);
    Field one = transfer(a, AB, +1);
    CHECK(max_abs_diff(two, one) < 1e-9);
  }

  SUBCASE("linearity") {
    cplx lam{0.3, 0.8};
    Field la = a;
    la *= lam;
    Field t1 = transfer(la, Mat(1, {0.4}), +1);
    Field t2 = transfer(a, Mat(1, {0.4}), +1);
    t2 *= lam;
    CHECK(max_abs_diff(t1, t2) < 1e-12);
  }
}

TEST_CASE("transfer_series on polynomials") {
  SUBCASE("constants are annihilated") {
    PolySymbol one = PolySymbol::monomial_1d(0, 0);
    PolySymbol out = transfer_series(one, Mat(1, {0.7}), +1);
    CHECK(out.coeff_1d(0, 0) == cplx{1.0, 0.0});
    CHECK(out.terms().size() == 1);
  }

  SUBCASE("xi-free polynomials are fixed for every A") {
    PolySymbol x2 = PolySymbol::monomial_1d(2, 0);
    PolySymbol out = transfer_series(x2, Mat(1, {1.3}), -1);
    CHECK(out.coeff_1d(2, 0) == cplx{1.0, 0.0});
    CHECK(out.terms().size() == 1);
  }

  SUBCASE("x xi acquires the pinned first-order constant") {
    const double t = 0.5;
    // quantization-change direction op_0 -> op_t is e^{-i<A D_xi, D_x>}: + i t
    PolySymbol out = transfer_series(PolySymbol::monomial_1d(1, 1), Mat(1, {t}), -1);
    CHECK(std::abs(out.coeff_1d(0, 0) - cplx{0.0, t}) < 1e-15);
    CHECK(std::abs(out.coeff_1d(1, 1) - cplx{1.0, 0.0}) < 1e-15);
    // opposite sign flips the constant
    PolySymbol rev = transfer_series(PolySymbol::monomial_1d(1, 1), Mat(1, {t}), +1);
    CHECK(std::abs(rev.coeff_1d(0, 0) - cplx{0.0, -t}) < 1e-15);
  }

  SUBCASE("series terminates on x^2 xi^2 with the exact second-order term") {
    // L = -A d_x d_xi lowers degree by 2: terms (2,2) -> (1,1) -> (0,0)
    const double t = 0.25;
    PolySymbol out = transfer_series(PolySymbol::monomial_1d(2, 2), Mat(1, {t}), -1);
    // -i t L(x^2 xi^2) = -i t * (-(4 x xi)) -> k=1 coefficient 4 i t
    CHECK(std::abs(out.coeff_1d(1, 1) - cplx{0.0, 4.0 * t}) < 1e-15);
    // k=2: ((-i t)^2 / 2) L^2 = (-t^2/2) * 4 = -2 t^2 on the constant
    CHECK(std::abs(out.coeff_1d(0, 0) - cplx{-2.0 * t * t, 0.0}) < 1e-15);
  }
}

TEST_CASE("series sign is pinned by the operator-equality oracle") {
  // quantization_change is operator-exact on the discrete model, so the
  // origin value of the transferred damped x*xi must reproduce the series
  // constant +i*t (up to the damping correction (1 + t^2/sigma^4)^(-3/2)),
  // and be far from the opposite-sign candidate.
  Grid g = make_grid_1d(0.0, 20.0, 256);
  const double t = 0.5, sigma = 3.0;
  PolySymbol p = PolySymbol::monomial_1d(1, 1, {1.0, 0.0}, sigma);
  Field b = quantization_change(render(p, symbol_grid(g)), Mat::zero(1), Mat(1, {t}));
  cplx c0 = b[128 * 256 + 128];  // value at (x, xi) = (0, 0)
  PolySymbol series = transfer_series(p, Mat(1, {t}), -1);
  cplx cs = series.coeff_1d(0, 0);
  CHECK(std::abs(cs - cplx{0.0, t}) < 1e-15);
  CHECK(std::abs(c0 - cs) < 0.01 * t);
  CHECK(std::abs(c0 - cs) < 0.02 * std::abs(c0 + cs));
}

TEST_CASE("quantization change preserves the operator") {
  Grid g = make_grid_1d(0.0, 12.0, 128);

  SUBCASE("A = B is the identity") {
    Field a = gaussian_symbol(g);
    Field b = quantization_change(a, Mat(1, {0.5}), Mat(1, {0.5}));
    CHECK(max_abs_diff(b, a) == 0.0);
  }

  SUBCASE("Gaussian symbol, 0 -> I/2, operator matrices agree") {
    Field a = gaussian_symbol(g);
    Field b = quantization_change(a, Mat::zero(1), Mat(1, {0.5}));
    OperatorMatrix M0 = op_matrix(a, QuantizationMatrix::kn(1));
    OperatorMatrix Mw = op_matrix(b, QuantizationMatrix::weyl(1));
    CHECK(rel_op_diff(M0, Mw) < 1e-8);
  }

  SUBCASE("damped polynomial symbol, 0 -> I/2") {
    Field a = render(PolySymbol::monomial_1d(1, 1, {1.0, 0.0}, 8.0), symbol_grid(g));
    Field b = quantization_change(a, Mat::zero(1), Mat(1, {0.5}));
    OperatorMatrix M0 = op_matrix(a, QuantizationMatrix::kn(1));
    OperatorMatrix Mw = op_matrix(b, QuantizationMatrix::weyl(1));
    CHECK(rel_op_diff(M0, Mw) < 1e-8);
  }

  SUBCASE("chain A -> B -> C equals A -> C") {
    Field a = gaussian_symbol(g);
    Mat A(1, {0.1}), B(1, {0.6}), C(1, {0.35});
    Field via = quantization_change(quantization_change(a, A, B), B, C);
    Field direct = quantization_change(a, A, C);
    CHECK(max_abs_diff(via, direct) < 1e-9);
  }
}

TEST_CASE("transfer matches the series route within the damping envelope") {
  // The spectral route acts on the damped rendering while the series acts on
  // the bare polynomial, so the routes differ by the damping commutator, of
  // size |t| (|x|^2 + |xi|^2) / sigma^2 times the damper. The box is chosen so
  // the rendering decays below 1e-7 at the wrap seam (sigma = 3 on L = 20).
  Grid g = make_grid_1d(0.0, 20.0, 256);
  const double t = 0.5, sigma = 3.0;
  PolySymbol p = PolySymbol::monomial_1d(1, 1, {1.0, 0.0}, sigma);
  Field spectral = transfer(render(p, symbol_grid(g)), Mat(1, {t}), +1);
  Field series = render(transfer_series(p, Mat(1, {t}), +1), symbol_grid(g));

  Field diff = spectral;
  diff -= series;
  const double s2 = sigma * sigma;
  double envelope = 0.0;
  std::vector<double> pt(2);
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff.grid().coords(i, pt);
    double r2 = pt[0] * pt[0] + pt[1] * pt[1];
    double commutator = t * (r2 / s2 + (pt[0] * pt[0] * pt[1] * pt[1]) / (s2 * s2)) *
                            std::exp(-r2 / (2.0 * s2)) +
                        2e-2 * t;
    double excess = std::abs(diff[i]) - 1.5 * commutator;
    envelope = std::max(envelope, excess);
  }
  CHECK(envelope <= 0.0);
  // far from the damper the two routes agree to the first-order commutator;
  // right at the center the residual is t^2/sigma^4-sized
  CHECK(std::abs(diff[128 * 256 + 128]) < 5.0 * t * t * t / (s2 * s2));
}

TEST_CASE("sharp product, kernel route") {
  Grid g = make_grid_1d(0.0, 10.0, 64);
  Field a1 = gaussian_symbol(g);
  Field a2 = symbol_grid_field(g, [](double x, double xi) {
    return cplx{std::exp(-(x * x + xi * xi) / 3.0), 0.0};
  });

  SUBCASE("unit symbol is the unit of the product") {
    Field s = sharp(unit_symbol(g), a2, QuantizationMatrix::weyl(1));
    CHECK(interior_max_abs_diff(s, a2) < 1e-9);
    Field s2 = sharp(a2, unit_symbol(g), QuantizationMatrix::weyl(1));
    CHECK(interior_max_abs_diff(s2, a2) < 1e-9);
  }

  SUBCASE("matrix identity for A in {0, I/2}") {
    for (double t : {0.0, 0.5}) {
      QuantizationMatrix A = QuantizationMatrix::scaled(1, t);
      OperatorMatrix M1 = op_matrix(a1, A);
      OperatorMatrix M2 = op_matrix(a2, A);
      OperatorMatrix prod = M1.multiply(M2);
      OperatorMatrix Ms = op_matrix(sharp(a1, a2, A), A);
      OperatorMatrix D = Ms;
      for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = 0; j < D.cols(); ++j) D.at(i, j) -= prod.at(i, j);
      CHECK(D.frobenius() / prod.frobenius() < 1e-6);
    }
  }

  SUBCASE("Weyl sharp of damped x and damped xi carries + i/2") {
    const double sigma = 8.0;
    Field ax = render(PolySymbol::monomial_1d(1, 0, {1.0, 0.0}, sigma), symbol_grid(g));
    Field axi = render(PolySymbol::monomial_1d(0, 1, {1.0, 0.0}, sigma), symbol_grid(g));
    Field s = sharp(ax, axi, QuantizationMatrix::weyl(1));
    // value at the origin is the composition constant
    std::size_t i0 = 32, k0 = 32;
    cplx c = s[i0 * 64 + k0];
    CHECK(std::abs(c - cplx{0.0, 0.5}) < 0.1 * std::abs(c - cplx{0.0, -0.5}));
    CHECK(std::abs(c - cplx{0.0, 0.5}) < 0.02);
  }
}

TEST_CASE("sharp tensor route agrees with the kernel route") {
  Grid g = make_grid_1d(0.0, 8.0, 32);
  Field a1 = gaussian_symbol(g);
  Field a2 = symbol_grid_field(g, [](double x, double xi) {
    return cplx{std::exp(-(x * x + xi * xi) / 3.0), 0.1 * std::exp(-(x * x + xi * xi))};
  });

  SUBCASE("A = 0") {
    Field k = sharp(a1, a2, QuantizationMatrix::kn(1));
    Field t = sharp_tensor(a1, a2, QuantizationMatrix::kn(1));
    CHECK(interior_max_abs_diff(k, t) < 1e-6);
  }

  SUBCASE("Weyl") {
    Field k = sharp(a1, a2, QuantizationMatrix::weyl(1));
    Field t = sharp_tensor(a1, a2, QuantizationMatrix::weyl(1));
    CHECK(interior_max_abs_diff(k, t) < 1e-6);
  }

  SUBCASE("memory guard refuses N > 32") {
    Grid big = make_grid_1d(0.0, 8.0, 64);
    Field b1 = gaussian_symbol(big);
    CHECK_THROWS_AS((void)sharp_tensor(b1, b1, QuantizationMatrix::kn(1)), Error);
  }
}

TEST_CASE("transfer keeps the weighted-class margin across an R ladder") {
  // the transferred symbol must stay in the same omega-weighted class: the
  // margin may move by a bounded factor, never blow up
  Grid g = make_grid_1d(0.0, 8.0, 32);
  Field a = gaussian_symbol(g);
  Field b = transfer(a, Mat(1, {0.5}), +1);
  Field phi2 = gaussian_window(a.grid());
  for (double R : {0.05, 0.1, 0.2}) {
    double before = s_omega_margin(a, phi2, WeightSpec::unit(), 0.5, R);
    double after = s_omega_margin(b, phi2, WeightSpec::unit(), 0.5, R);
    CHECK(after < 10.0 * before);
    CHECK(before < 10.0 * after);
  }
}

TEST_CASE("regularized factors converge in the sharp product") {
  Grid g = make_grid_1d(0.0, 10.0, 64);
  Field a = gaussian_symbol(g);
  Field b = symbol_grid_field(g, [](double x, double xi) {
    return cplx{std::exp(-(x * x + xi * xi) / 2.5), 0.0};
  });
  Field ref = sharp(a, b, QuantizationMatrix::kn(1));
  double prev = 1e300;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    Field s = sharp(regularize(a, eps, eps), b, QuantizationMatrix::kn(1));
    Field d = s;
    d -= ref;
    double err = interior_max_abs(d);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("trace restriction") {
  Grid g = make_cube_grid(2, 6.0, 32);
  Field F = Field::sample(g, {AxisRole::Space, AxisRole::Space},
                          [](std::span<const double> p) {
                            return cplx{std::exp(-p[0] * p[0] - p[1] * p[1]), 0.0};
                          });

  SUBCASE("slice at x0 = 0") {
    double x0 = 0.0;
    Field s = trace_restrict(F, std::span(&x0, 1));
    CHECK(s.dim() == 1);
    for (std::size_t j = 0; j < 32; ++j) {
      double x = s.grid().axis(0).point(j);
      CHECK(std::abs(s[j] - cplx{std::exp(-x * x), 0.0}) < 1e-14);
    }
  }

  SUBCASE("diagonal of e^{-(x-y)^2} is constant 1") {
    Field G = Field::sample(g, {AxisRole::Space, AxisRole::Space},
                            [](std::span<const double> p) {
                              double d = p[0] - p[1];
                              return cplx{std::exp(-d * d), 0.0};
                            });
    Field diag = trace_restrict_diagonal(G);
    for (std::size_t j = 0; j < 32; ++j)
      CHECK(std::abs(diag[j] - cplx{1.0, 0.0}) < 1e-14);
  }

  SUBCASE("off-grid x0 is rejected") {
    double x0 = 0.1234567;
    CHECK_THROWS_AS((void)trace_restrict(F, std::span(&x0, 1)), Error);
  }
}

TEST_CASE("sharp weight estimate") {
  SUBCASE("unit weights: margin 1 at R0 = kappa(1/s) R") {
    SharpWeightReport rep = sharp_weight_check(WeightSpec::unit(), WeightSpec::unit(),
                                               0.5, 1.0, SweepBox{2, 4.0, 9});
    CHECK(rep.margin == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.r0 == doctest::Approx(kappa(2.0) * 1.0));
  }

  SUBCASE("R = 0 with radial weights stays finite") {
    WeightSpec w = WeightSpec::radial(0.5, 1.0);
    SharpWeightReport rep = sharp_weight_check(w, w, 1.0, 0.0, SweepBox{2, 4.0, 7});
    CHECK(std::isfinite(rep.margin));
    CHECK(rep.margin > 0.0);
  }

  SUBCASE("degenerate box") {
    SharpWeightReport rep = sharp_weight_check(WeightSpec::radial(1.0, 1.0),
                                               WeightSpec::unit(), 1.0, 0.5,
                                               SweepBox{2, 0.0, 1});
    CHECK(rep.margin == doctest::Approx(1.0));
  }
}
