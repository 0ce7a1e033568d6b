#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "psical/field.hpp"
#include "psical/weights.hpp"

namespace psical {

constexpr double kInfExponent = std::numeric_limits<double>::infinity();

// Weighted mixed Lebesgue norm on a field with 2d axes: inner axes are
// integrated (or sup'ed) first with exponent p, the rest with exponent q.
struct MixedNormSpec {
  double p = 2.0;
  double q = 2.0;
  std::vector<std::size_t> inner_axes;
  WeightSpec weight = WeightSpec::unit();
};

// Riemann-sum discretization of the iterated integral, cell measure included,
// sup replacing the integral when the exponent is infinite. All reductions
// are deterministic pairwise sums.
double mixed_norm(const Field& F, const MixedNormSpec& spec);

}  // namespace psical
