#include "psical/grid.hpp"

#include <cmath>
#include <numbers>

namespace psical {

Axis Axis::dual() const {
  Axis d;
  d.center = 0.0;
  d.count = count;
  // dual spacing 2*pi/(count*spacing) = pi/halfwidth; halfwidth = count*spacing/2.
  const double dual_spacing = std::numbers::pi / halfwidth;
  d.halfwidth = 0.5 * static_cast<double>(count) * dual_spacing;
  return d;
}

Grid::Grid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  const std::size_t d = axes_.size();
  strides_.assign(d, 1);
  for (std::size_t i = d; i-- > 0;) {
    if (i + 1 < d) strides_[i] = strides_[i + 1] * axes_[i + 1].count;
  }
  size_ = d == 0 ? 0 : 1;
  for (const Axis& a : axes_) size_ *= a.count;
}

double Grid::cell_measure() const {
  double m = 1.0;
  for (const Axis& a : axes_) m *= a.spacing();
  return m;
}

void Grid::coords(std::size_t flat, std::span<double> out) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    std::size_t j = (flat / strides_[i]) % axes_[i].count;
    out[i] = axes_[i].point(j);
  }
}

std::vector<std::size_t> Grid::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i)
    idx[i] = (flat / strides_[i]) % axes_[i].count;
  return idx;
}

std::size_t Grid::flatten(std::span<const std::size_t> idx) const {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) flat += idx[i] * strides_[i];
  return flat;
}

Grid make_grid(std::span<const double> center, std::span<const double> halfwidth,
               std::span<const std::uint32_t> count) {
  require(center.size() == halfwidth.size() && center.size() == count.size(),
          ErrorCode::Shape, "make_grid: axis parameter lists differ in length");
  require(!center.empty(), ErrorCode::InvalidGrid, "make_grid: zero-dimensional grid");
  std::vector<Axis> axes(center.size());
  for (std::size_t i = 0; i < center.size(); ++i) {
    require(count[i] % 2 == 0 && count[i] >= 4, ErrorCode::InvalidGrid,
            "make_grid: axis count must be even and >= 4");
    require(halfwidth[i] > 0.0 && std::isfinite(halfwidth[i]), ErrorCode::InvalidGrid,
            "make_grid: axis halfwidth must be positive");
    axes[i] = Axis{center[i], halfwidth[i], count[i]};
  }
  return Grid(std::move(axes));
}

Grid make_cube_grid(std::size_t dim, double halfwidth, std::uint32_t count) {
  std::vector<double> c(dim, 0.0), l(dim, halfwidth);
  std::vector<std::uint32_t> n(dim, count);
  return make_grid(c, l, n);
}

}  // namespace psical
