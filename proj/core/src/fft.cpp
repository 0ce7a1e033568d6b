#include "psical/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>

namespace psical {

namespace {

// Process-wide FFTW plan cache. Plans are created FFTW_UNALIGNED so they can
// be executed on any buffer via fftw_execute_dft; creation is serialized
// (FFTW planning is not thread-safe), execution is.
std::mutex g_plan_mutex;
std::map<std::pair<int, int>, fftw_plan> g_plans;

fftw_plan plan_for(int n, int fftw_sign) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_pair(n, fftw_sign);
  auto it = g_plans.find(key);
  if (it != g_plans.end()) return it->second;
  std::vector<cplx> a(n), b(n);
  fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                 reinterpret_cast<fftw_complex*>(b.data()), fftw_sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  require(p != nullptr, ErrorCode::InvalidGrid, "fft: planning failed");
  g_plans.emplace(key, p);
  return p;
}

// One unitary pass along an axis of length n with the given memory stride.
//
// On a centered axis the grid twiddles collapse to parities: with
// x_j = -L + j dx and xi_k = -L* + k dx*,
//   e^{-i x_j xi_k} = sigma * (-1)^j * (-1)^k * e^{-2 pi i jk / n},
// sigma = e^{-i n pi / 2} = +-1 for even n. So
//   forward[k] = (2 pi)^(-1/2) dx  * sigma (-1)^k FFT [(-1)^j f_j](k)
//   inverse[j] = (2 pi)^(-1/2) dxi * sigma (-1)^j IFFT[(-1)^k g_k](j),
// both exact lattice pairings (inverse . forward == identity).
void axis_pass(std::span<cplx> values, std::size_t n, std::size_t stride,
               double in_spacing, FtDirection dir) {
  const int fftw_sign = dir == FtDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan = plan_for(static_cast<int>(n), fftw_sign);

  const double sigma = (n % 4 == 2) ? -1.0 : 1.0;
  const double scale = in_spacing / std::sqrt(2.0 * std::numbers::pi);

  std::vector<cplx> in(n), out(n);
  auto* fin = reinterpret_cast<fftw_complex*>(in.data());
  auto* fout = reinterpret_cast<fftw_complex*>(out.data());

  const std::size_t block = stride * n;
  const std::size_t nblocks = values.size() / block;
  for (std::size_t b = 0; b < nblocks; ++b) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      cplx* line = values.data() + b * block + inner;
      for (std::size_t j = 0; j < n; ++j)
        in[j] = (j & 1) ? -line[j * stride] : line[j * stride];
      fftw_execute_dft(plan, fin, fout);
      for (std::size_t k = 0; k < n; ++k) {
        double sgn = (k & 1) ? -sigma : sigma;
        line[k * stride] = out[k] * (sgn * scale);
      }
    }
  }
}

Field dft_axes_impl(const Field& f, std::span<const std::size_t> axes, FtDirection dir,
                    bool enforce_roles) {
  std::vector<Axis> new_axes = f.grid().axes();
  std::vector<AxisRole> new_roles = f.roles();
  for (std::size_t a : axes) {
    require(a < f.dim(), ErrorCode::Shape, "fourier: axis index out of range");
    const Axis& ax = f.grid().axis(a);
    require(ax.center == 0.0, ErrorCode::Shape, "fourier: transform axis must be centered at 0");
    if (enforce_roles) {
      AxisRole need = dir == FtDirection::Forward ? AxisRole::Space : AxisRole::Frequency;
      require(f.roles()[a] == need, ErrorCode::AxisRole,
              dir == FtDirection::Forward
                  ? "fourier: forward transform requires a space axis"
                  : "fourier: inverse transform requires a frequency axis");
    }
    new_axes[a] = ax.dual();
    new_roles[a] = new_roles[a] == AxisRole::Space ? AxisRole::Frequency : AxisRole::Space;
  }

  std::vector<cplx> vals(f.values().begin(), f.values().end());
  for (std::size_t a : axes) {
    axis_pass(vals, f.grid().axis(a).count, f.grid().strides()[a],
              f.grid().axis(a).spacing(), dir);
  }
  return Field(Grid(std::move(new_axes)), std::move(new_roles), std::move(vals));
}

}  // namespace

Field fourier(const Field& f, std::span<const std::size_t> axes, FtDirection dir) {
  return dft_axes_impl(f, axes, dir, /*enforce_roles=*/true);
}

Field fourier_all(const Field& f, FtDirection dir) {
  std::vector<std::size_t> axes(f.dim());
  for (std::size_t i = 0; i < axes.size(); ++i) axes[i] = i;
  return fourier(f, axes, dir);
}

Field dft_axes_raw(const Field& f, std::span<const std::size_t> axes, FtDirection dir) {
  return dft_axes_impl(f, axes, dir, /*enforce_roles=*/false);
}

namespace detail {
void dft_axis_inplace(std::span<cplx> values, const Grid& grid, std::size_t axis,
                      FtDirection dir) {
  axis_pass(values, grid.axis(axis).count, grid.strides()[axis],
            grid.axis(axis).spacing(), dir);
}
}  // namespace detail

}  // namespace psical
