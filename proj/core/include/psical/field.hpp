#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "psical/grid.hpp"

namespace psical {

using cplx = std::complex<double>;

// Complex samples over a Grid, row-major in ascending physical coordinate.
// Every axis carries a role so transforms can check what they act on: a
// function f(x) lives on space axes, a symbol a(x,xi) on (space, frequency).
class Field {
 public:
  Field() = default;
  Field(Grid grid, std::vector<AxisRole> roles, std::vector<cplx> values);

  static Field zeros(Grid grid, std::vector<AxisRole> roles);
  static Field constant(Grid grid, std::vector<AxisRole> roles, cplx value);
  // Evaluate fn at every lattice point (coords passed per axis).
  static Field sample(Grid grid, std::vector<AxisRole> roles,
                      const std::function<cplx(std::span<const double>)>& fn);

  const Grid& grid() const { return grid_; }
  const std::vector<AxisRole>& roles() const { return roles_; }
  std::size_t dim() const { return grid_.dim(); }
  std::size_t size() const { return values_.size(); }

  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  cplx operator[](std::size_t i) const { return values_[i]; }
  cplx& operator[](std::size_t i) { return values_[i]; }

  void set_roles(std::vector<AxisRole> roles);

  // Quadrature norms over the grid (cell measure included).
  double l2_norm() const;
  double max_abs() const;

  Field& operator*=(cplx s);
  Field& operator-=(const Field& o);
  Field& operator+=(const Field& o);

 private:
  Grid grid_;
  std::vector<AxisRole> roles_;
  std::vector<cplx> values_;
};

double max_abs_diff(const Field& a, const Field& b);

// Max |a-b| over lattice points with |coord_k| <= frac * halfwidth_k on every
// axis. Fields on a periodic box are only trusted away from the wrap seam,
// so comparisons restrict to this region.
double interior_max_abs_diff(const Field& a, const Field& b, double frac = 1.0 / 3.0);
double interior_max_abs(const Field& a, double frac = 1.0 / 3.0);

}  // namespace psical
