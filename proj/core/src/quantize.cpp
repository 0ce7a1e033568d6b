#include "psical/quantize.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "psical/fft.hpp"
#include "psical/reduce.hpp"
#include "psical/shear.hpp"

namespace psical {

namespace {

// Block split of a symbol grid: first half x (space), second half xi
// (frequency), xi block dual to the x block.
void check_symbol(const Field& a, const char* who) {
  require(a.dim() % 2 == 0, ErrorCode::Shape,
          std::string(who) + ": symbol needs an even axis count");
  const std::size_t d = a.dim() / 2;
  for (std::size_t i = 0; i < d; ++i) {
    require(a.roles()[i] == AxisRole::Space && a.roles()[d + i] == AxisRole::Frequency,
            ErrorCode::AxisRole, std::string(who) + ": symbol roles must be (space, frequency)");
    require(a.grid().axis(d + i) == a.grid().axis(i).dual(), ErrorCode::Shape,
            std::string(who) + ": xi block must be the dual of the x block");
    require(a.grid().axis(i).center == 0.0, ErrorCode::Shape,
            std::string(who) + ": x block must be centered");
  }
}

std::vector<std::size_t> xi_axes(std::size_t d) {
  std::vector<std::size_t> v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = d + i;
  return v;
}

Grid block_grid(const Grid& g, std::size_t from, std::size_t n) {
  std::vector<Axis> axes;
  for (std::size_t i = 0; i < n; ++i) axes.push_back(g.axis(from + i));
  return Grid(std::move(axes));
}

}  // namespace

Grid OperatorKernel::target_grid() const {
  return block_grid(values.grid(), 0, values.dim() / 2);
}

Grid OperatorKernel::source_grid() const {
  return block_grid(values.grid(), values.dim() / 2, values.dim() / 2);
}

OperatorMatrix::OperatorMatrix(Grid target, Grid source, std::vector<cplx> entries)
    : rows_(target.size()), cols_(source.size()),
      target_(std::move(target)), source_(std::move(source)), m_(std::move(entries)) {
  require(m_.size() == rows_ * cols_, ErrorCode::Shape,
          "OperatorMatrix: entry count != rows*cols");
}

Field OperatorMatrix::apply(const Field& f) const {
  require(f.grid() == source_, ErrorCode::Shape, "OperatorMatrix: f not on the source grid");
  Field out = Field::zeros(target_, f.roles());
  for (std::size_t i = 0; i < rows_; ++i) {
    const cplx* row = m_.data() + i * cols_;
    out[i] = pairwise_sum(cols_, [&](std::size_t j) { return row[j] * f[j]; });
  }
  return out;
}

OperatorMatrix OperatorMatrix::multiply(const OperatorMatrix& o) const {
  require(cols_ == o.rows_ && source_ == o.target_, ErrorCode::Shape,
          "OperatorMatrix: incompatible product");
  std::vector<cplx> out(rows_ * o.cols_, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < rows_; ++i) {
    const cplx* arow = m_.data() + i * cols_;
    cplx* orow = out.data() + i * o.cols_;
    for (std::size_t k = 0; k < cols_; ++k) {
      const cplx aik = arow[k];
      const cplx* brow = o.m_.data() + k * o.cols_;
      for (std::size_t j = 0; j < o.cols_; ++j) orow[j] += aik * brow[j];
    }
  }
  return OperatorMatrix(target_, o.source_, std::move(out));
}

double OperatorMatrix::inf_norm() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = pairwise_sum(cols_, [&](std::size_t j) { return std::abs(m_[i * cols_ + j]); });
    worst = std::max(worst, s);
  }
  return worst;
}

double OperatorMatrix::frobenius() const {
  return std::sqrt(pairwise_sum(m_.size(), [&](std::size_t i) { return std::norm(m_[i]); }));
}

double OperatorMatrix::max_abs() const {
  double w = 0.0;
  for (const cplx& v : m_) w = std::max(w, std::abs(v));
  return w;
}

double OperatorMatrix::hermitian_defect() const {
  require(rows_ == cols_, ErrorCode::Shape, "hermitian_defect: square matrices only");
  double w = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      w = std::max(w, std::abs(m_[i * cols_ + j] - std::conj(m_[j * cols_ + i])));
  return w;
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::Shape,
          "max_abs_diff: matrix shape mismatch");
  double w = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    w = std::max(w, std::abs(a.entries()[i] - b.entries()[i]));
  return w;
}

OperatorKernel kernel_from_symbol(const Field& a, const QuantizationMatrix& A) {
  check_symbol(a, "kernel_from_symbol");
  const std::size_t d = a.dim() / 2;
  require(A.dim() == d, ErrorCode::Shape, "kernel_from_symbol: quantization dim mismatch");

  // (F2^{-1} a)(x, v)
  auto xiax = xi_axes(d);
  Field t = dft_axes_raw(a, xiax, FtDirection::Inverse);
  // (x, v) -> ((x - A v), v), fractional shear
  t = shear(t, A.A, -1);
  // v -> -v, then per-x lattice shear v -> v - x: together K(x,y) = t(x, x - y)
  t = reflect_block(t, 1);
  t = shear_second(t, Mat::identity(d), -1);

  const double scale = std::pow(2.0 * std::numbers::pi, -0.5 * static_cast<double>(d));
  t *= cplx{scale, 0.0};
  t.set_roles(std::vector<AxisRole>(2 * d, AxisRole::Space));
  return OperatorKernel{std::move(t), A};
}

Field symbol_from_kernel(const OperatorKernel& K, const QuantizationMatrix& A) {
  const Field& k = K.values;
  require(k.dim() % 2 == 0, ErrorCode::Shape, "symbol_from_kernel: 2d-axis kernel expected");
  const std::size_t d = k.dim() / 2;
  require(A.dim() == d, ErrorCode::Shape, "symbol_from_kernel: quantization dim mismatch");

  const double scale = std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(d));
  Field t = k;
  t *= cplx{scale, 0.0};
  t = shear_second(t, Mat::identity(d), +1);
  t = reflect_block(t, 1);
  t = shear(t, A.A, +1);
  auto xiax = xi_axes(d);
  t = dft_axes_raw(t, xiax, FtDirection::Forward);

  std::vector<AxisRole> roles(d, AxisRole::Space);
  roles.insert(roles.end(), d, AxisRole::Frequency);
  t.set_roles(std::move(roles));
  return t;
}

Field kernel_apply(const OperatorKernel& K, const Field& f) {
  const std::size_t d = K.values.dim() / 2;
  Grid src = block_grid(K.values.grid(), d, d);
  require(f.grid() == src, ErrorCode::Shape, "kernel_apply: f not on the kernel source grid");
  Grid tgt = block_grid(K.values.grid(), 0, d);
  const double dy = src.cell_measure();
  const std::size_t n = src.size();

  Field out = Field::zeros(tgt, f.roles());
  for (std::size_t i = 0; i < tgt.size(); ++i) {
    const cplx* row = K.values.values().data() + i * n;
    out[i] = pairwise_sum(n, [&](std::size_t j) { return row[j] * f[j]; }) * dy;
  }
  return out;
}

OperatorMatrix op_matrix(const Field& a, const QuantizationMatrix& A) {
  return op_matrix_from_kernel(kernel_from_symbol(a, A));
}

OperatorMatrix op_matrix_from_kernel(const OperatorKernel& K) {
  const std::size_t d = K.values.dim() / 2;
  Grid tgt = block_grid(K.values.grid(), 0, d);
  Grid src = block_grid(K.values.grid(), d, d);
  const double dy = src.cell_measure();
  std::vector<cplx> m(K.values.values().begin(), K.values.values().end());
  for (cplx& v : m) v *= dy;
  return OperatorMatrix(std::move(tgt), std::move(src), std::move(m));
}

OperatorKernel kernel_from_matrix(const OperatorMatrix& M, const QuantizationMatrix& A) {
  require(M.target_grid() == M.source_grid(), ErrorCode::Shape,
          "kernel_from_matrix: square operator expected");
  const Grid& g = M.source_grid();
  const double dy = g.cell_measure();
  std::vector<Axis> axes = g.axes();
  for (const Axis& ax : g.axes()) axes.push_back(ax);
  Grid kg(std::move(axes));
  std::vector<cplx> v(M.entries().begin(), M.entries().end());
  for (cplx& e : v) e /= dy;
  Field kf(std::move(kg), std::vector<AxisRole>(2 * g.dim(), AxisRole::Space), std::move(v));
  return OperatorKernel{std::move(kf), A};
}

Field direct_apply(const Field& a, const QuantizationMatrix& A, const Field& f) {
  check_symbol(a, "direct_apply");
  require(a.dim() == 2, ErrorCode::Shape, "direct_apply: slow-path oracle is 1-D only");
  const Axis& xax = a.grid().axis(0);
  const Axis& kax = a.grid().axis(1);
  require(f.dim() == 1 && f.grid().axis(0) == xax, ErrorCode::Shape,
          "direct_apply: f must live on the symbol's x grid");
  const std::size_t n = xax.count;
  const double dx = xax.spacing();
  const double dxi = kax.spacing();
  const double t = A.A(0, 0);

  // modes of a along x for trigonometric interpolation of the shifted argument
  std::size_t ax0 = 0;
  Field ahat = dft_axes_raw(a, std::span(&ax0, 1), FtDirection::Forward);
  const Axis& nuax = ahat.grid().axis(0);
  const double dnu = nuax.spacing();
  const double interp_scale = dnu / std::sqrt(2.0 * std::numbers::pi);

  // phase table e^{i (x_i - y_j) xi_k}, indexed by r = i - j + (n-1)
  std::vector<cplx> phase((2 * n - 1) * n);
  for (std::size_t r = 0; r < 2 * n - 1; ++r) {
    double diff = (static_cast<double>(r) - static_cast<double>(n - 1)) * dx;
    for (std::size_t k = 0; k < n; ++k)
      phase[r * n + k] = std::polar(1.0, diff * kax.point(k));
  }

  // symbol rows a(u, xi_k) cached per shifted coordinate; the key is the
  // lattice combination s = (1-t) i + t j, bit-identical for equal values
  std::map<double, std::vector<cplx>> rows;
  auto row_for = [&](double skey) -> const std::vector<cplx>& {
    auto it = rows.find(skey);
    if (it != rows.end()) return it->second;
    const double u = xax.origin() + dx * skey;
    std::vector<cplx> row(n, cplx{0.0, 0.0});
    for (std::size_t m = 0; m < n; ++m) {
      cplx e = std::polar(interp_scale, u * nuax.point(m));
      const cplx* src = ahat.values().data() + m * n;
      for (std::size_t k = 0; k < n; ++k) row[k] += src[k] * e;
    }
    return rows.emplace(skey, std::move(row)).first->second;
  };

  const double norm = dx * dxi / (2.0 * std::numbers::pi);
  Field out = Field::zeros(f.grid(), f.roles());
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      if (f[j] == cplx{0.0, 0.0}) continue;
      const double skey = (1.0 - t) * static_cast<double>(i) + t * static_cast<double>(j);
      const std::vector<cplx>& row = row_for(skey);
      const cplx* ph = phase.data() + (i + (n - 1) - j) * n;
      cplx inner = pairwise_sum(n, [&](std::size_t k) { return row[k] * ph[k]; });
      acc += inner * f[j];
    }
    out[i] = acc * norm;
  }
  return out;
}

Grid symbol_grid(const Grid& xgrid) {
  std::vector<Axis> axes = xgrid.axes();
  for (std::size_t i = 0; i < xgrid.dim(); ++i) axes.push_back(xgrid.axis(i).dual());
  return Grid(std::move(axes));
}

Field symbol_grid_field(const Grid& xgrid, const std::function<cplx(double, double)>& f) {
  require(xgrid.dim() == 1, ErrorCode::Shape, "symbol_grid_field: 1-D base grid expected");
  Grid sg = symbol_grid(xgrid);
  return Field::sample(sg, {AxisRole::Space, AxisRole::Frequency},
                       [&](std::span<const double> p) { return f(p[0], p[1]); });
}

}  // namespace psical
