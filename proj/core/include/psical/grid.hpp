#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "psical/error.hpp"

namespace psical {

enum class AxisRole : std::uint8_t { Space = 0, Frequency = 1 };

// One axis of a uniform tensor-product lattice on a centered box.
// Samples are center - halfwidth + j*spacing, j = 0..count-1 (left-closed),
// so the box [c-L, c+L) is tiled by count cells of width spacing = 2L/count.
struct Axis {
  double center = 0.0;
  double halfwidth = 0.0;
  std::uint32_t count = 0;

  double spacing() const { return 2.0 * halfwidth / count; }
  double origin() const { return center - halfwidth; }
  double point(std::size_t j) const { return origin() + static_cast<double>(j) * spacing(); }

  // Dual axis: count points centered at 0 with spacing 2*pi/(count*spacing).
  // spacing * dual.spacing * count == 2*pi, so dual(dual) restores a centered
  // copy of the original axis.
  Axis dual() const;

  bool operator==(const Axis& o) const {
    return center == o.center && halfwidth == o.halfwidth && count == o.count;
  }
};

class Grid {
 public:
  Grid() = default;
  explicit Grid(std::vector<Axis> axes);

  std::size_t dim() const { return axes_.size(); }
  const Axis& axis(std::size_t i) const { return axes_[i]; }
  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t size() const { return size_; }

  // Row-major strides, axis 0 slowest.
  const std::vector<std::size_t>& strides() const { return strides_; }

  double cell_measure() const;  // product of spacings
  void coords(std::size_t flat, std::span<double> out) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  std::size_t flatten(std::span<const std::size_t> idx) const;

  bool operator==(const Grid& o) const { return axes_ == o.axes_; }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

// Validating constructor used by the public API. Counts must be even and
// >= 4 so the dual lattice contains 0 and fftshift ordering is symmetric.
Grid make_grid(std::span<const double> center, std::span<const double> halfwidth,
               std::span<const std::uint32_t> count);

inline Grid make_grid_1d(double center, double halfwidth, std::uint32_t count) {
  return make_grid(std::span(&center, 1), std::span(&halfwidth, 1), std::span(&count, 1));
}

// Centered d-dim cube grid with the same halfwidth/count on every axis.
Grid make_cube_grid(std::size_t dim, double halfwidth, std::uint32_t count);

}  // namespace psical
