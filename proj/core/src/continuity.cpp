#include "psical/continuity.hpp"

#include <cmath>

#include "psical/stft.hpp"

namespace psical {

NormLadderReport norm_ladder(const Field& f, const Field& window, double s, double p,
                             double q, std::vector<double> h_ladder, double threshold) {
  require(!h_ladder.empty(), ErrorCode::Input, "norm_ladder: empty ladder");
  for (std::size_t i = 1; i < h_ladder.size(); ++i)
    require(h_ladder[i] > h_ladder[i - 1], ErrorCode::Input,
            "norm_ladder: ladder must be strictly increasing");

  NormLadderReport rep;
  rep.h_ladder = std::move(h_ladder);
  rep.threshold = threshold;
  for (double h : rep.h_ladder) {
    MixedNormSpec spec;
    spec.p = p;
    spec.q = q;
    spec.weight = WeightSpec::power_pair(h, s);
    rep.norms.push_back(mod_norm(f, window, spec));
  }
  rep.finite_for_some_h = rep.norms.front() <= threshold;
  rep.finite_for_all_h = true;
  for (double n : rep.norms) rep.finite_for_all_h = rep.finite_for_all_h && n <= threshold;
  return rep;
}

BoundedMapReport bounded_map_check(const Field& a, const QuantizationMatrix& A, double s,
                                   double h1, double h2, double p, double q,
                                   std::span<const Field> test_set, double r1, double r2) {
  require(!test_set.empty(), ErrorCode::Input, "bounded_map_check: empty test set");
  OperatorMatrix M = op_matrix(a, A);
  Field window = gaussian_window(M.source_grid());

  MixedNormSpec in_spec, out_spec;
  in_spec.p = out_spec.p = p;
  in_spec.q = out_spec.q = q;
  in_spec.weight = WeightSpec::power_pair(h1, s);
  out_spec.weight = WeightSpec::power_pair(h2, s);

  BoundedMapReport rep;
  for (const Field& f : test_set) {
    require(f.grid() == M.source_grid(), ErrorCode::Shape,
            "bounded_map_check: test function not on the operator grid");
    double denom = mod_norm(f, window, in_spec);
    require(denom > 0.0, ErrorCode::Input,
            "bounded_map_check: degenerate (zero) test function");
    double numer = mod_norm(M.apply(f), window, out_spec);
    rep.per_function.push_back(numer / denom);
    rep.ratio = std::max(rep.ratio, rep.per_function.back());
  }
  const double k = kappa(1.0 / s);
  rep.slack_r = r2 - k * h2 - std::pow(2.0, -1.0 / s) * r1;
  rep.slack_h = h1 - k * (h2 + r1);
  return rep;
}

SmoothingReport infinite_order_smoothing_check(const Field& a, const QuantizationMatrix& A,
                                               const Field& f, double s) {
  require(s > 0.5, ErrorCode::Domain, "infinite_order_smoothing_check: s must exceed 1/2");
  OperatorMatrix M = op_matrix(a, A);
  require(f.grid() == M.source_grid(), ErrorCode::Shape,
          "infinite_order_smoothing_check: f not on the operator grid");
  Field window = gaussian_window(f.grid());

  SmoothingReport rep;
  rep.input_fit = fit_stft_decay(stft(f, window), s, DecayOrientation::XGrowth);
  rep.image_fit = fit_stft_decay(stft(M.apply(f), window), s, DecayOrientation::XGrowth);
  rep.image_decay_type = rep.image_fit.h < 0.0 && rep.image_fit.eps > 0.0;
  return rep;
}

}  // namespace psical
