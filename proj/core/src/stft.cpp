#include "psical/stft.hpp"

#include <cmath>
#include <numbers>

#include "psical/fft.hpp"
#include "psical/parallel.hpp"

namespace psical {

Field gaussian_window(const Grid& grid) {
  for (std::size_t a = 0; a < grid.dim(); ++a)
    require(grid.axis(a).center == 0.0, ErrorCode::Shape,
            "gaussian_window: axes must be centered");
  const double c = std::pow(std::numbers::pi, -0.25 * static_cast<double>(grid.dim()));
  return Field::sample(grid, std::vector<AxisRole>(grid.dim(), AxisRole::Space),
                       [c](std::span<const double> x) {
                         double r2 = 0.0;
                         for (double t : x) r2 += t * t;
                         return cplx{c * std::exp(-0.5 * r2), 0.0};
                       });
}

namespace {

void check_shift_grid(const Grid& g) {
  for (std::size_t a = 0; a < g.dim(); ++a)
    require(g.axis(a).center == 0.0 && g.axis(a).count % 2 == 0, ErrorCode::OffGrid,
            "stft: window shifts need centered axes with 0 on-grid");
}

// flat index of the cyclically rolled window sample phi(y_j - x_m):
// per axis, (j - m + N/2) mod N.
std::size_t rolled_index(const Grid& g, std::span<const std::size_t> j,
                         std::span<const std::size_t> m) {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    std::size_t n = g.axis(a).count;
    std::size_t r = (j[a] + n + n / 2 - m[a]) % n;
    flat += r * g.strides()[a];
  }
  return flat;
}

Grid product_grid(const Grid& g) {
  std::vector<Axis> axes = g.axes();
  for (std::size_t a = 0; a < g.dim(); ++a) axes.push_back(g.axis(a).dual());
  return Grid(std::move(axes));
}

}  // namespace

StftData stft(const Field& f, const Field& window) {
  require(f.grid() == window.grid(), ErrorCode::Shape, "stft: f and window grids differ");
  check_shift_grid(f.grid());
  const double wl2 = window.l2_norm();
  require(wl2 > 0.0, ErrorCode::Window, "stft: window is identically zero");

  const Grid& g = f.grid();
  const std::size_t sz = g.size();
  Grid pg = product_grid(g);
  std::vector<AxisRole> roles = f.roles();
  for (AxisRole r : f.roles())
    roles.push_back(r == AxisRole::Space ? AxisRole::Frequency : AxisRole::Space);

  std::vector<cplx> out(pg.size());
  parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
    std::vector<cplx> slice(sz);
    std::vector<std::size_t> jidx(g.dim());
    for (std::size_t m = lo; m < hi; ++m) {
      auto midx = g.unflatten(m);
      for (std::size_t j = 0; j < sz; ++j) {
        jidx = g.unflatten(j);
        slice[j] = f[j] * std::conj(window[rolled_index(g, jidx, midx)]);
      }
      for (std::size_t a = 0; a < g.dim(); ++a)
        detail::dft_axis_inplace(slice, g, a, FtDirection::Forward);
      std::copy(slice.begin(), slice.end(), out.begin() + m * sz);
    }
  });

  return StftData{Field(std::move(pg), std::move(roles), std::move(out)), window, wl2};
}

namespace {

void check_consistent(const StftData& V) {
  const Grid& pg = V.values.grid();
  require(pg.dim() % 2 == 0, ErrorCode::Consistency, "stft data: odd axis count");
  const std::size_t d = pg.dim() / 2;
  require(V.window.dim() == d, ErrorCode::Consistency, "stft data: window dim mismatch");
  for (std::size_t a = 0; a < d; ++a) {
    require(pg.axis(a) == V.window.grid().axis(a), ErrorCode::Consistency,
            "stft data: space block differs from window grid");
    require(pg.axis(d + a) == V.window.grid().axis(a).dual(), ErrorCode::Consistency,
            "stft data: frequency block is not the dual grid");
  }
  double wl2 = V.window.l2_norm();
  require(wl2 > 0.0, ErrorCode::Consistency, "stft data: zero window");
  require(std::abs(wl2 - V.window_l2) <= 1e-9 * wl2, ErrorCode::Consistency,
          "stft data: stored window_l2 does not match the window");
}

}  // namespace

Field istft(const StftData& V) {
  check_consistent(V);
  const Grid& g = V.window.grid();
  const std::size_t sz = g.size();
  const std::size_t d = g.dim();
  const Grid& pg = V.values.grid();

  // grid describing one frequency slice (the dual block)
  std::vector<Axis> dual_axes;
  for (std::size_t a = 0; a < d; ++a) dual_axes.push_back(pg.axis(d + a));
  Grid dual_grid(std::move(dual_axes));

  Field out = Field::zeros(g, V.window.roles());
  const double cell = g.cell_measure();
  const double inv_w2 = 1.0 / (V.window_l2 * V.window_l2);

  std::vector<cplx> slice(sz);
  std::vector<std::size_t> jidx(d);
  for (std::size_t m = 0; m < sz; ++m) {
    auto midx = g.unflatten(m);
    std::copy(V.values.values().begin() + m * sz, V.values.values().begin() + (m + 1) * sz,
              slice.begin());
    for (std::size_t a = 0; a < d; ++a)
      detail::dft_axis_inplace(slice, dual_grid, a, FtDirection::Inverse);
    for (std::size_t j = 0; j < sz; ++j) {
      jidx = g.unflatten(j);
      out[j] += slice[j] * V.window[rolled_index(g, jidx, midx)] * (cell * inv_w2);
    }
  }
  return out;
}

double mod_norm(const Field& f, const Field& window, const MixedNormSpec& spec) {
  StftData V = stft(f, window);
  MixedNormSpec s = spec;
  s.inner_axes.clear();
  for (std::size_t a = 0; a < f.dim(); ++a) s.inner_axes.push_back(a);
  return mixed_norm(V.values, s);
}

}  // namespace psical
