#pragma once

#include <span>
#include <vector>

#include "psical/quantize.hpp"
#include "psical/symbol_classes.hpp"

namespace psical {

// Modulation norms of one function against the weight ladder
// omega_h = e^{h(|x|^(1/s) + |xi|^(1/s))}, h in a strictly increasing list.
// The finiteness flags operationalize "finite for some/all h" at desk scale:
// a norm counts as finite when it stays below the threshold.
struct NormLadderReport {
  std::vector<double> h_ladder;
  std::vector<double> norms;
  double threshold = 0.0;
  bool finite_for_some_h = false;
  bool finite_for_all_h = false;
};

NormLadderReport norm_ladder(const Field& f, const Field& window, double s, double p,
                             double q, std::vector<double> h_ladder,
                             double threshold = 1e8);

// Empirical operator norm of op_A(a) between weighted modulation spaces:
// max over the test set of mod_norm(op f, omega_{h2}) / mod_norm(f, omega_{h1}).
// Also reports the slack of both constant conditions for the caller-chosen
// (r1, r2) family (defaults 0).
struct BoundedMapReport {
  double ratio = 0.0;
  std::vector<double> per_function;
  double slack_r = 0.0;  // r2 - kappa(1/s) h2 - 2^(-1/s) r1
  double slack_h = 0.0;  // h1 - kappa(1/s) (h2 + r1)
};

BoundedMapReport bounded_map_check(const Field& a, const QuantizationMatrix& A, double s,
                                   double h1, double h2, double p, double q,
                                   std::span<const Field> test_set, double r1 = 0.0,
                                   double r2 = 0.0);

// Decay fits of f and of op_A(a) f: for symbols with permitted growth the
// image must stay in the decay regime (fitted h < 0, eps > 0 in the x-growth
// orientation).
struct SmoothingReport {
  DecayFit input_fit;
  DecayFit image_fit;
  bool image_decay_type = false;
};

SmoothingReport infinite_order_smoothing_check(const Field& a, const QuantizationMatrix& A,
                                               const Field& f, double s);

}  // namespace psical
