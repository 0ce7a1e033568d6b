#include "psical/calculus.hpp"

#include <cmath>

#include "psical/fft.hpp"
#include "psical/shear.hpp"

namespace psical {

PolySymbol PolySymbol::monomial(std::vector<unsigned> alpha, std::vector<unsigned> beta,
                                cplx coeff, double sigma) {
  require(alpha.size() == beta.size() && !alpha.empty(), ErrorCode::Shape,
          "PolySymbol: alpha/beta length mismatch");
  PolySymbol p(alpha.size(), sigma);
  p.add(alpha, beta, coeff);
  return p;
}

PolySymbol PolySymbol::monomial_1d(unsigned a, unsigned b, cplx coeff, double sigma) {
  return monomial({a}, {b}, coeff, sigma);
}

PolySymbol& PolySymbol::add(const std::vector<unsigned>& alpha,
                            const std::vector<unsigned>& beta, cplx coeff) {
  require(alpha.size() == dim_ && beta.size() == dim_, ErrorCode::Shape,
          "PolySymbol: multi-index dim mismatch");
  unsigned deg = 0;
  for (unsigned v : alpha) deg += v;
  for (unsigned v : beta) deg += v;
  require(deg <= kMaxPolyDegree, ErrorCode::OrderCap, "PolySymbol: degree above cap");
  if (coeff == cplx{0.0, 0.0}) return *this;
  auto key = Key{alpha, beta};
  auto it = terms_.find(key);
  if (it == terms_.end())
    terms_.emplace(std::move(key), coeff);
  else {
    it->second += coeff;
    if (it->second == cplx{0.0, 0.0}) terms_.erase(it);
  }
  return *this;
}

cplx PolySymbol::coeff(const std::vector<unsigned>& alpha,
                       const std::vector<unsigned>& beta) const {
  auto it = terms_.find(Key{alpha, beta});
  return it == terms_.end() ? cplx{0.0, 0.0} : it->second;
}

cplx PolySymbol::coeff_1d(unsigned a, unsigned b) const { return coeff({a}, {b}); }

unsigned PolySymbol::degree() const {
  unsigned deg = 0;
  for (const auto& [key, c] : terms_) {
    unsigned d = 0;
    for (unsigned v : key.first) d += v;
    for (unsigned v : key.second) d += v;
    deg = std::max(deg, d);
  }
  return deg;
}

cplx PolySymbol::eval(std::span<const double> x, std::span<const double> xi) const {
  cplx acc{0.0, 0.0};
  for (const auto& [key, c] : terms_) {
    double mono = 1.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      for (unsigned k = 0; k < key.first[i]; ++k) mono *= x[i];
      for (unsigned k = 0; k < key.second[i]; ++k) mono *= xi[i];
    }
    acc += c * mono;
  }
  if (sigma_ > 0.0) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    for (double v : xi) r2 += v * v;
    acc *= std::exp(-r2 / (2.0 * sigma_ * sigma_));
  }
  return acc;
}

Field render(const PolySymbol& p, const Grid& symbol_grid) {
  require(symbol_grid.dim() == 2 * p.dim(), ErrorCode::Shape,
          "render: symbol grid must have 2d axes");
  const std::size_t d = p.dim();
  std::vector<AxisRole> roles(d, AxisRole::Space);
  roles.insert(roles.end(), d, AxisRole::Frequency);
  return Field::sample(symbol_grid, std::move(roles), [&](std::span<const double> pt) {
    return p.eval(pt.subspan(0, d), pt.subspan(d));
  });
}

namespace {

void check_transfer_input(const Field& a, const Mat& A, const char* who) {
  require(a.dim() % 2 == 0, ErrorCode::Shape,
          std::string(who) + ": symbol needs an even axis count");
  const std::size_t d = a.dim() / 2;
  require(A.dim() == d, ErrorCode::Shape, std::string(who) + ": matrix dim mismatch");
  for (std::size_t i = 0; i < d; ++i)
    require(a.grid().axis(d + i) == a.grid().axis(i).dual(), ErrorCode::Shape,
            std::string(who) + ": xi block must be the dual of the x block");
}

}  // namespace

Field transfer(const Field& a, const Mat& A, int sign) {
  check_transfer_input(a, A, "transfer");
  require(sign == 1 || sign == -1, ErrorCode::Shape, "transfer: sign must be +-1");
  if (A.is_zero()) return a;
  const std::size_t d = a.dim() / 2;
  std::vector<std::size_t> xiax(d);
  for (std::size_t i = 0; i < d; ++i) xiax[i] = d + i;

  Field t = dft_axes_raw(a, xiax, FtDirection::Inverse);
  t = shear(t, A, -sign);
  t = dft_axes_raw(t, xiax, FtDirection::Forward);
  t.set_roles(a.roles());
  return t;
}

PolySymbol transfer_series(const PolySymbol& p, const Mat& A, int sign) {
  require(A.dim() == p.dim(), ErrorCode::Shape, "transfer_series: matrix dim mismatch");
  require(sign == 1 || sign == -1, ErrorCode::Shape, "transfer_series: sign must be +-1");

  const std::size_t d = p.dim();
  // L = <A D_xi, D_x> = -sum_{j,k} A_{jk} d/dx_j d/dxi_k
  auto apply_L = [&](const PolySymbol& q) {
    PolySymbol out(d, q.sigma());
    for (const auto& [key, c] : q.terms()) {
      const auto& [alpha, beta] = key;
      for (std::size_t j = 0; j < d; ++j) {
        if (alpha[j] == 0) continue;
        for (std::size_t k = 0; k < d; ++k) {
          if (beta[k] == 0 || A(j, k) == 0.0) continue;
          auto na = alpha;
          auto nb = beta;
          const double f = static_cast<double>(na[j]) * static_cast<double>(nb[k]);
          --na[j];
          --nb[k];
          out.add(na, nb, -A(j, k) * f * c);
        }
      }
    }
    return out;
  };

  PolySymbol acc = p;
  PolySymbol cur = p;
  cplx factor{1.0, 0.0};
  const cplx step = sign == 1 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
  for (unsigned k = 1; !cur.empty(); ++k) {
    cur = apply_L(cur);
    if (cur.empty()) break;
    factor *= step / static_cast<double>(k);
    for (const auto& [key, c] : cur.terms()) acc.add(key.first, key.second, factor * c);
  }
  return acc;
}

Field quantization_change(const Field& a, const Mat& A, const Mat& B) {
  // op_A(a) == op_B(b) pins b = e^{-i<(B-A) D_xi, D_x>} a: one shear by B - A
  // inside the partial-transform conjugation.
  return transfer(a, B - A, -1);
}

Field sharp(const Field& a1, const Field& a2, const QuantizationMatrix& A) {
  require(a1.grid() == a2.grid(), ErrorCode::Shape, "sharp: symbols on different grids");
  OperatorMatrix m1 = op_matrix(a1, A);
  OperatorMatrix m2 = op_matrix(a2, A);
  OperatorMatrix prod = m1.multiply(m2);
  return symbol_from_kernel(kernel_from_matrix(prod, A), A);
}

namespace {

// a1 #_0 a2: build F(x, xi, y, eta) = a1(x, xi) a2(y, eta), apply the cross
// phase e^{i <D_xi, D_y>} (forward transforms pair D with its dual variable),
// restrict to (y, eta) = (x, xi).
Field sharp0_tensor(const Field& a1, const Field& a2) {
  const std::size_t d = a1.dim() / 2;
  const Grid& sg = a1.grid();
  for (std::size_t i = 0; i < sg.dim(); ++i)
    require(sg.axis(i).count <= kTensorRouteMaxCount, ErrorCode::MemoryGuard,
            "sharp_tensor: axis count above the memory guard (32)");

  std::vector<Axis> axes = sg.axes();
  for (const Axis& ax : sg.axes()) axes.push_back(ax);
  Grid big(std::move(axes));
  std::vector<AxisRole> roles = a1.roles();
  for (AxisRole r : a2.roles()) roles.push_back(r);

  const std::size_t n2 = sg.size();
  std::vector<cplx> vals(big.size());
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j) vals[i * n2 + j] = a1[i] * a2[j];
  Field F(std::move(big), std::move(roles), std::move(vals));

  // transform axes: the xi block of a1 (axes d..2d) and the y block of a2
  // (axes 2d..3d)
  std::vector<std::size_t> tax;
  for (std::size_t i = 0; i < d; ++i) tax.push_back(d + i);
  for (std::size_t i = 0; i < d; ++i) tax.push_back(2 * d + i);
  F = dft_axes_raw(F, tax, FtDirection::Forward);

  const Grid& fg = F.grid();
  std::vector<double> pt(fg.dim());
  for (std::size_t i = 0; i < F.size(); ++i) {
    fg.coords(i, pt);
    double phase = 0.0;
    for (std::size_t k = 0; k < d; ++k) phase += pt[d + k] * pt[2 * d + k];
    F[i] *= std::polar(1.0, phase);
  }
  F = dft_axes_raw(F, tax, FtDirection::Inverse);

  return trace_restrict_diagonal(F);
}

}  // namespace

Field sharp_tensor(const Field& a1, const Field& a2, const QuantizationMatrix& A) {
  require(a1.grid() == a2.grid(), ErrorCode::Shape, "sharp_tensor: symbols on different grids");
  check_transfer_input(a1, A.A, "sharp_tensor");
  if (A.A.is_zero()) return sharp0_tensor(a1, a2);
  // wrap with the transfers mapping op_A symbols to op_0 symbols and back:
  // the op_0 symbol of op_A(a) is e^{+i<A D_xi, D_x>} a, so the inner factors
  // take sign +1 and the result comes back with sign -1 (pinned against the
  // kernel-composition route)
  Field b1 = transfer(a1, A.A, +1);
  Field b2 = transfer(a2, A.A, +1);
  Field s0 = sharp0_tensor(b1, b2);
  return transfer(s0, A.A, -1);
}

Field trace_restrict(const Field& F, std::span<const double> x0) {
  require(F.dim() % 2 == 0, ErrorCode::Shape, "trace_restrict: 2d-axis field expected");
  const std::size_t d = F.dim() / 2;
  require(x0.size() == d, ErrorCode::Shape, "trace_restrict: x0 dim mismatch");

  std::vector<std::size_t> fixed(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Axis& ax = F.grid().axis(d + i);
    double pos = (x0[i] - ax.origin()) / ax.spacing();
    double rounded = std::round(pos);
    require(std::abs(pos - rounded) <= 1e-9 && rounded >= 0.0 &&
                rounded < static_cast<double>(ax.count),
            ErrorCode::OffGrid, "trace_restrict: x0 is not on the lattice");
    fixed[i] = static_cast<std::size_t>(rounded);
  }

  std::vector<Axis> axes;
  std::vector<AxisRole> roles;
  for (std::size_t i = 0; i < d; ++i) {
    axes.push_back(F.grid().axis(i));
    roles.push_back(F.roles()[i]);
  }
  Grid g(std::move(axes));
  Field out = Field::zeros(g, std::move(roles));
  std::vector<std::size_t> idx(2 * d);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto half = g.unflatten(i);
    for (std::size_t k = 0; k < d; ++k) {
      idx[k] = half[k];
      idx[d + k] = fixed[k];
    }
    out[i] = F[F.grid().flatten(idx)];
  }
  return out;
}

Field trace_restrict_diagonal(const Field& F) {
  require(F.dim() % 2 == 0, ErrorCode::Shape, "trace_restrict: 2d-axis field expected");
  const std::size_t d = F.dim() / 2;
  for (std::size_t i = 0; i < d; ++i)
    require(F.grid().axis(i) == F.grid().axis(d + i), ErrorCode::Shape,
            "trace_restrict: diagonal needs equal paired grids");

  std::vector<Axis> axes;
  std::vector<AxisRole> roles;
  for (std::size_t i = 0; i < d; ++i) {
    axes.push_back(F.grid().axis(i));
    roles.push_back(F.roles()[i]);
  }
  Grid g(std::move(axes));
  Field out = Field::zeros(g, std::move(roles));
  std::vector<std::size_t> idx(2 * d);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto half = g.unflatten(i);
    for (std::size_t k = 0; k < d; ++k) {
      idx[k] = half[k];
      idx[d + k] = half[k];
    }
    out[i] = F[F.grid().flatten(idx)];
  }
  return out;
}

SharpWeightReport sharp_weight_check(const WeightSpec& w1, const WeightSpec& w2,
                                     double s, double R, const SweepBox& box) {
  require(s > 0.0, ErrorCode::Domain, "sharp_weight_check: s must be positive");
  const std::size_t dim = box.dim;
  const std::size_t npts = box.size();
  const double inv_s = 1.0 / s;

  // vector norms over box points, precomputed once
  std::vector<std::vector<double>> pts(npts, std::vector<double>(dim));
  for (std::size_t i = 0; i < npts; ++i) {
    std::size_t f = i;
    for (std::size_t a = dim; a-- > 0;) {
      pts[i][a] = box.coord(f % box.points);
      f /= box.points;
    }
  }
  auto vnorm = [&](std::span<const double> v) {
    double q = 0.0;
    for (double t : v) q += t * t;
    return std::sqrt(q);
  };

  const double kap = kappa(inv_s);
  const double ladder[] = {0.0, 0.5, 1.0, 2.0, 4.0};

  SharpWeightReport best;
  best.margin = std::numeric_limits<double>::infinity();
  std::vector<double> arg1(dim), arg2(dim), diff(dim);
  for (double c0 : ladder) {
    const double r0 = kap * R + c0;
    double margin = 0.0;
    for (std::size_t iX = 0; iX < npts; ++iX) {
      const auto& X = pts[iX];
      const double den_w = eval_weight(w1, X) * eval_weight(w2, X);
      for (std::size_t iY = 0; iY < npts; ++iY) {
        const auto& Y = pts[iY];
        const double ny = std::pow(vnorm(Y), inv_s);
        for (std::size_t iZ = 0; iZ < npts; ++iZ) {
          const auto& Z = pts[iZ];
          for (std::size_t a = 0; a < dim; ++a) {
            arg1[a] = X[a] - Y[a] + Z[a];
            arg2[a] = X[a] + Z[a];
            diff[a] = Y[a] - Z[a];
          }
          double num = eval_weight(w1, arg1) * eval_weight(w2, arg2) *
                       std::exp(-r0 * (std::pow(vnorm(Z), inv_s) +
                                       std::pow(vnorm(diff), inv_s)));
          double ratio = num / (den_w * std::exp(-R * ny));
          margin = std::max(margin, ratio);
        }
      }
    }
    if (margin < best.margin) {
      best.margin = margin;
      best.r0 = r0;
    }
  }
  return best;
}

}  // namespace psical
