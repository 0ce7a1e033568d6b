#include "psical/field.hpp"

#include <cmath>

#include "psical/reduce.hpp"

namespace psical {

Field::Field(Grid grid, std::vector<AxisRole> roles, std::vector<cplx> values)
    : grid_(std::move(grid)), roles_(std::move(roles)), values_(std::move(values)) {
  require(roles_.size() == grid_.dim(), ErrorCode::Shape,
          "Field: axis-role list length != grid dim");
  require(values_.size() == grid_.size(), ErrorCode::Shape,
          "Field: value count != grid size");
}

Field Field::zeros(Grid grid, std::vector<AxisRole> roles) {
  std::vector<cplx> v(grid.size(), cplx{0.0, 0.0});
  return Field(std::move(grid), std::move(roles), std::move(v));
}

Field Field::constant(Grid grid, std::vector<AxisRole> roles, cplx value) {
  std::vector<cplx> v(grid.size(), value);
  return Field(std::move(grid), std::move(roles), std::move(v));
}

Field Field::sample(Grid grid, std::vector<AxisRole> roles,
                    const std::function<cplx(std::span<const double>)>& fn) {
  std::vector<cplx> v(grid.size());
  std::vector<double> pt(grid.dim());
  for (std::size_t i = 0; i < v.size(); ++i) {
    grid.coords(i, pt);
    v[i] = fn(pt);
  }
  return Field(std::move(grid), std::move(roles), std::move(v));
}

void Field::set_roles(std::vector<AxisRole> roles) {
  require(roles.size() == grid_.dim(), ErrorCode::Shape,
          "Field: axis-role list length != grid dim");
  roles_ = std::move(roles);
}

double Field::l2_norm() const {
  double m = grid_.cell_measure();
  double s = pairwise_sum(values_.size(),
                          [&](std::size_t i) { return std::norm(values_[i]); });
  return std::sqrt(s * m);
}

double Field::max_abs() const {
  double m = 0.0;
  for (const cplx& v : values_) m = std::max(m, std::abs(v));
  return m;
}

Field& Field::operator*=(cplx s) {
  for (cplx& v : values_) v *= s;
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require(grid_ == o.grid_, ErrorCode::Shape, "Field -=: grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

Field& Field::operator+=(const Field& o) {
  require(grid_ == o.grid_, ErrorCode::Shape, "Field +=: grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

double max_abs_diff(const Field& a, const Field& b) {
  require(a.grid() == b.grid(), ErrorCode::Shape, "max_abs_diff: grid mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

namespace {
bool point_interior(const Grid& g, std::size_t flat, double frac) {
  for (std::size_t ax = 0; ax < g.dim(); ++ax) {
    std::size_t j = (flat / g.strides()[ax]) % g.axis(ax).count;
    double coord = g.axis(ax).point(j);
    if (std::abs(coord) > frac * g.axis(ax).halfwidth) return false;
  }
  return true;
}
}  // namespace

double interior_max_abs_diff(const Field& a, const Field& b, double frac) {
  require(a.grid() == b.grid(), ErrorCode::Shape, "interior_max_abs_diff: grid mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!point_interior(a.grid(), i, frac)) continue;
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

double interior_max_abs(const Field& a, double frac) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!point_interior(a.grid(), i, frac)) continue;
    m = std::max(m, std::abs(a[i]));
  }
  return m;
}

}  // namespace psical
