#include "psical/shear.hpp"

#include <cmath>

#include "psical/fft.hpp"

namespace psical {

namespace {

// Common implementation: transform the moving block, multiply the phase ramp
// e^{i sign <dual coord of moving block, A * (coords of fixed block)>},
// transform back. moving_block is 0 for shear, 1 for shear_second.
Field shear_impl(const Field& F, const Mat& A, int sign, int moving_block) {
  require(F.dim() % 2 == 0, ErrorCode::Shape, "shear: field must have 2d axes");
  const std::size_t d = F.dim() / 2;
  require(A.dim() == d, ErrorCode::Shape, "shear: matrix dim != axis block dim");
  require(sign == 1 || sign == -1, ErrorCode::Shape, "shear: sign must be +-1");
  if (A.is_zero()) return F;

  std::vector<std::size_t> moving(d), fixed(d);
  for (std::size_t i = 0; i < d; ++i) {
    moving[i] = moving_block == 0 ? i : d + i;
    fixed[i] = moving_block == 0 ? d + i : i;
  }

  Field G = dft_axes_raw(F, moving, FtDirection::Forward);

  const Grid& g = G.grid();
  std::vector<double> pt(g.dim()), u(d), y(d), shift(d);
  for (std::size_t flat = 0; flat < G.size(); ++flat) {
    g.coords(flat, pt);
    for (std::size_t i = 0; i < d; ++i) {
      u[i] = pt[moving[i]];
      y[i] = pt[fixed[i]];
    }
    A.apply(y, shift);
    double phase = 0.0;
    for (std::size_t i = 0; i < d; ++i) phase += u[i] * shift[i];
    phase *= static_cast<double>(sign);
    G[flat] *= cplx{std::cos(phase), std::sin(phase)};
  }

  Field out = dft_axes_raw(G, moving, FtDirection::Inverse);
  out.set_roles(F.roles());
  return out;
}

}  // namespace

Field shear(const Field& F, const Mat& A, int sign) { return shear_impl(F, A, sign, 0); }

Field shear_second(const Field& F, const Mat& B, int sign) {
  return shear_impl(F, B, sign, 1);
}

Field reflect_block(const Field& F, int block) {
  require(F.dim() % 2 == 0, ErrorCode::Shape, "reflect_block: field must have 2d axes");
  const std::size_t d = F.dim() / 2;
  require(block == 0 || block == 1, ErrorCode::Shape, "reflect_block: block must be 0 or 1");

  const Grid& g = F.grid();
  for (std::size_t i = 0; i < d; ++i) {
    const Axis& ax = g.axis(block == 0 ? i : d + i);
    require(ax.center == 0.0, ErrorCode::Shape, "reflect_block: axes must be centered");
  }

  Field out = Field::zeros(g, F.roles());
  std::vector<std::size_t> idx(g.dim());
  for (std::size_t flat = 0; flat < F.size(); ++flat) {
    auto src = g.unflatten(flat);
    idx = src;
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t a = block == 0 ? i : d + i;
      std::size_t n = g.axis(a).count;
      idx[a] = (n - src[a]) % n;
    }
    out[g.flatten(idx)] = F[flat];
  }
  return out;
}

}  // namespace psical
