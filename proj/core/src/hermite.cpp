#include "psical/hermite.hpp"

#include <cmath>
#include <numbers>

namespace psical {

Field hermite_function(std::size_t k, const Grid& grid, bool renormalize) {
  require(grid.dim() == 1, ErrorCode::Shape, "hermite_function: 1-D grids only");
  const Axis& ax = grid.axis(0);
  const std::size_t n = ax.count;

  std::vector<double> prev(n, 0.0), cur(n), next(n);
  const double c0 = std::pow(std::numbers::pi, -0.25);
  for (std::size_t j = 0; j < n; ++j) {
    double x = ax.point(j);
    cur[j] = c0 * std::exp(-0.5 * x * x);
  }
  for (std::size_t m = 0; m < k; ++m) {
    const double a = std::sqrt(2.0 / static_cast<double>(m + 1));
    const double b = m == 0 ? 0.0 : std::sqrt(static_cast<double>(m) / static_cast<double>(m + 1));
    for (std::size_t j = 0; j < n; ++j) {
      double x = ax.point(j);
      next[j] = a * x * cur[j] - b * prev[j];
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }

  std::vector<cplx> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = cur[j];
  Field f(grid, {AxisRole::Space}, std::move(v));
  if (renormalize) {
    double nrm = f.l2_norm();
    require(nrm > 0.0, ErrorCode::Domain, "hermite_function: zero norm on grid");
    f *= cplx{1.0 / nrm, 0.0};
  }
  return f;
}

std::vector<Field> hermite_set(std::size_t count, const Grid& grid) {
  std::vector<Field> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(hermite_function(k, grid));
  return out;
}

}  // namespace psical
