#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psical/grid.hpp"
#include "psical/mat.hpp"

namespace psical {

// kappa(r): subadditivity constant of t -> t^r, i.e. the least K with
// |x+y|^r <= K(|x|^r + |y|^r). 1 for r <= 1, else 2^(r-1).
double kappa(double r);

// Parametric weight family. A weight evaluates on an n-dim point; the kinds
// that distinguish blocks split the point (or the declared `block` subset of
// it) into two halves:
//
//   unit                    1
//   radial(h, s)            e^{h |v|^(1/s)}            v = block coords
//   split(h, eps, s)        e^{h |x|^(1/s) - eps |xi|^(1/s)}   halves (x, xi)
//   product                 product of factors
//   extended(base, R, s)    base(X) * e^{-R (|y1|^(1/s) + |y2|^(1/s))},
//                           X = first half, (y1, y2) = halves of second half
struct WeightSpec {
  enum class Kind { Unit, Radial, Split, Product, Extended };

  Kind kind = Kind::Unit;
  double h = 0.0;
  double eps = 0.0;
  double s = 1.0;
  double R = 0.0;
  std::vector<std::size_t> block;     // Radial only; empty = whole point
  int half = 0;                       // Radial only; 1 = first half, 2 = second half
  std::vector<WeightSpec> factors;    // Product
  std::vector<WeightSpec> base;       // Extended; exactly one entry

  static WeightSpec unit();
  static WeightSpec radial(double h, double s, std::vector<std::size_t> block = {});
  static WeightSpec split(double h, double eps, double s);
  static WeightSpec product(std::vector<WeightSpec> factors);
  static WeightSpec extended(WeightSpec base, double R, double s);

  // e^{h(|x|^(1/s) + |xi|^(1/s))} on a 2-block point: the ladder weight used
  // by the modulation-space characterizations.
  static WeightSpec power_pair(double h, double s);

  std::string to_json() const;
  static WeightSpec from_json(const std::string& text);
};

double eval_weight(const WeightSpec& w, std::span<const double> point);

// Closed symmetric box sweep: n points per axis from -radius to +radius
// inclusive (n == 1 degenerates to {0}). Weight checks sweep these boxes
// rather than Grid lattices, which are even-count and half-open.
struct SweepBox {
  std::size_t dim = 1;
  double radius = 0.0;
  std::size_t points = 1;

  double coord(std::size_t j) const {
    return points == 1 ? 0.0
                       : -radius + 2.0 * radius * static_cast<double>(j) /
                             static_cast<double>(points - 1);
  }
  std::size_t size() const;
};

// sup over on-box pairs (x, y) with x, y, x+y all on the box of
//   w(x+y) / (w(x) e^{c |y|^(1/s)}).
// Finite, box-reported empirical moderateness constant.
double moderateness_margin(const WeightSpec& w, double c, double s, const SweepBox& box);

// Entire series multiplier m_s(r) = sum_j r^j / (j!)^(2s) evaluated at
// r = tau * <x>^2 with <x> = (1 + |x|^2)^(1/2). Terms are added until the
// last one falls below 1e-16 of the running sum; exceeding max_terms is an
// explicit truncation error, never a silent cut.
struct MultiplierParams {
  double s = 0.5;
  double tau = 1.0;
  std::size_t max_terms = 512;
};

double m_s_tau(const MultiplierParams& p, std::span<const double> x);
double m_s_tau_1d(const MultiplierParams& p, double x);

// Empirical constants for the two-sided bound
//   C_low^(-1) e^{(2s-eps) eta^(1/(2s)) <x>^(1/s)} <= m_{s,tau}(x)
//                <= C_high e^{(2s+eps) eta^(1/(2s)) <x>^(1/s)}
// over the box. eta is caller input: the multiplier itself only knows tau.
struct PaolaBounds {
  double c_low = 0.0;
  double c_high = 0.0;
};
PaolaBounds paola_check(const MultiplierParams& p, double eta, double eps,
                        const SweepBox& box);

// Weight-quotient check behind the weighted boundedness result. Builds
//   w1(x,xi)       = e^{h1 (|x|^(1/s) + |xi|^(1/s))}
//   w2(x,xi)       = e^{h2 (|x|^(1/s) + |xi|^(1/s))}
//   w(x,xi,eta,y)  = e^{-r1 (|x|^(1/s) + |xi|^(1/s)) + r2 (|y|^(1/s) + |eta|^(1/s))}
// and reports
//   max_ratio    = max over the 4-axis box of
//                  w2(x - A y, xi + (1-A) eta) / (w1(x + (1-A) y, xi - A eta) * w)
//   pointwise_ok = both scalar inequalities
//                  h2 |2x - y|^(1/s) - h1 |2x + y|^(1/s) <= 2^(1/s) (r2 |y|^(1/s) - r1 |x|^(1/s))
//                  h2 |2xi + eta|^(1/s) - h1 |2xi - eta|^(1/s) <= 2^(1/s) (r2 |eta|^(1/s) - r1 |xi|^(1/s))
//                  hold at every node (tolerance tol).
struct WeightRatioReport {
  double max_ratio = 0.0;
  bool pointwise_ok = false;
  double worst_violation = 0.0;  // max LHS-RHS of the scalar inequalities
};
WeightRatioReport weight_ratio_check(double h1, double h2, double r1, double r2,
                                     double s, double A, const SweepBox& box,
                                     double tol = 1e-12);

// Canonical constant family for the quotient check: given (s, h, eps) returns
// (h1, h2, r1, r2) with h2 = eps/kappa - 2^(-1/s) kappa h, h1 = kappa (h + h2),
// r1 = h, r2 = eps. For h2 > 0 the scalar inequality above holds identically.
struct RhocondFamily {
  double h1 = 0.0, h2 = 0.0, r1 = 0.0, r2 = 0.0;
};
RhocondFamily rhocond_family(double s, double h, double eps);

}  // namespace psical
