#include "psical/norms.hpp"

#include <algorithm>
#include <cmath>

#include "psical/reduce.hpp"

namespace psical {

namespace {

struct AxisIter {
  std::vector<std::size_t> axes;   // axis ids
  std::vector<std::size_t> count;  // per axis
  std::vector<std::size_t> stride;
  std::size_t total = 1;

  AxisIter(const Grid& g, const std::vector<std::size_t>& ids) : axes(ids) {
    for (std::size_t a : axes) {
      count.push_back(g.axis(a).count);
      stride.push_back(g.strides()[a]);
      total *= g.axis(a).count;
    }
  }
  // flat offset of the k-th point of this sub-lattice
  std::size_t offset(std::size_t k) const {
    std::size_t off = 0;
    for (std::size_t i = axes.size(); i-- > 0;) {
      off += (k % count[i]) * stride[i];
      k /= count[i];
    }
    return off;
  }
};

bool valid_exponent(double p) { return p == kInfExponent || p >= 1.0; }

}  // namespace

double mixed_norm(const Field& F, const MixedNormSpec& spec) {
  require(valid_exponent(spec.p) && valid_exponent(spec.q), ErrorCode::InvalidExponent,
          "mixed_norm: exponents must lie in [1, inf]");
  const Grid& g = F.grid();
  for (std::size_t a : spec.inner_axes)
    require(a < g.dim(), ErrorCode::Shape, "mixed_norm: inner axis out of range");

  std::vector<std::size_t> outer_ids;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    if (std::find(spec.inner_axes.begin(), spec.inner_axes.end(), a) ==
        spec.inner_axes.end())
      outer_ids.push_back(a);
  }
  AxisIter inner(g, spec.inner_axes);
  AxisIter outer(g, outer_ids);

  double inner_measure = 1.0, outer_measure = 1.0;
  for (std::size_t a : spec.inner_axes) inner_measure *= g.axis(a).spacing();
  for (std::size_t a : outer_ids) outer_measure *= g.axis(a).spacing();

  // weighted magnitudes, one pass
  std::vector<double> w(F.size());
  {
    std::vector<double> pt(g.dim());
    const bool unit = spec.weight.kind == WeightSpec::Kind::Unit;
    for (std::size_t i = 0; i < F.size(); ++i) {
      double omega = 1.0;
      if (!unit) {
        g.coords(i, pt);
        omega = eval_weight(spec.weight, pt);
      }
      w[i] = std::abs(F[i]) * omega;
    }
  }

  std::vector<double> per_outer(outer.total);
  for (std::size_t o = 0; o < outer.total; ++o) {
    const std::size_t base = outer.offset(o);
    if (spec.p == kInfExponent) {
      double m = 0.0;
      for (std::size_t k = 0; k < inner.total; ++k)
        m = std::max(m, w[base + inner.offset(k)]);
      per_outer[o] = m;
    } else {
      double s = pairwise_sum(inner.total, [&](std::size_t k) {
        return std::pow(w[base + inner.offset(k)], spec.p);
      });
      per_outer[o] = std::pow(s * inner_measure, 1.0 / spec.p);
    }
  }

  if (spec.q == kInfExponent) {
    double m = 0.0;
    for (double v : per_outer) m = std::max(m, v);
    return m;
  }
  double s = pairwise_sum(outer.total,
                          [&](std::size_t o) { return std::pow(per_outer[o], spec.q); });
  return std::pow(s * outer_measure, 1.0 / spec.q);
}

}  // namespace psical
