#include "psical/symbol_classes.hpp"

#include <algorithm>
#include <atomic>
#include <cfloat>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "psical/fft.hpp"
#include "psical/parallel.hpp"
#include "psical/reduce.hpp"

namespace psical {

namespace {

void enumerate_rec(std::size_t dim, unsigned budget, std::vector<unsigned>& cur,
                   std::vector<std::vector<unsigned>>& out) {
  if (cur.size() == dim) {
    out.push_back(cur);
    return;
  }
  for (unsigned k = 0; k <= budget; ++k) {
    cur.push_back(k);
    enumerate_rec(dim, budget - k, cur, out);
    cur.pop_back();
  }
}

// all multi-indices with total degree <= M, ordered by construction
std::vector<std::vector<unsigned>> multi_indices(std::size_t dim, unsigned M) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  enumerate_rec(dim, M, cur, out);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    unsigned da = 0, db = 0;
    for (unsigned v : a) da += v;
    for (unsigned v : b) db += v;
    return da < db;
  });
  return out;
}

unsigned total_degree(const std::vector<unsigned>& a) {
  unsigned d = 0;
  for (unsigned v : a) d += v;
  return d;
}

double multi_factorial(const std::vector<unsigned>& a) {
  double f = 1.0;
  for (unsigned v : a)
    for (unsigned k = 2; k <= v; ++k) f *= k;
  return f;
}

void check_space_field(const Field& f, const char* who) {
  for (AxisRole r : f.roles())
    require(r == AxisRole::Space, ErrorCode::AxisRole,
            std::string(who) + ": field must live on space axes");
}

// d^alpha f from the precomputed spectrum fhat: multiply (i xi)^alpha, invert.
Field derivative_from_hat(const Field& fhat, const std::vector<unsigned>& alpha) {
  Field g = fhat;
  const Grid& fg = g.grid();
  std::vector<double> xi(fg.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    fg.coords(i, xi);
    cplx m{1.0, 0.0};
    for (std::size_t ax = 0; ax < fg.dim(); ++ax)
      for (unsigned k = 0; k < alpha[ax]; ++k) m *= cplx{0.0, xi[ax]};
    g[i] *= m;
  }
  return fourier_all(g, FtDirection::Inverse);
}

}  // namespace

SeminormReport gs_seminorm(const Field& f, double s, double t, double h, int M) {
  require(M >= 0 && M <= kMaxDerivativeOrder, ErrorCode::OrderCap,
          "gs_seminorm: order must lie in [0, 8]");
  require(s > 0.0 && t > 0.0 && h > 0.0, ErrorCode::Domain,
          "gs_seminorm: s, t, h must be positive");
  check_space_field(f, "gs_seminorm");

  Field fhat = fourier_all(f, FtDirection::Forward);
  auto alphas = multi_indices(f.dim(), static_cast<unsigned>(M));
  auto betas = alphas;

  SeminormReport rep;
  rep.s = s;
  rep.t = t;
  rep.h = h;
  rep.order = M;

  const Grid& g = f.grid();
  std::vector<double> pt(g.dim());
  for (const auto& alpha : alphas) {
    Field da = derivative_from_hat(fhat, alpha);
    // one pass of the grid accumulates sup |x^beta d^alpha f| for every beta
    std::vector<double> sup(betas.size(), 0.0);
    for (std::size_t i = 0; i < da.size(); ++i) {
      g.coords(i, pt);
      double av = std::abs(da[i]);
      if (av == 0.0) continue;
      for (std::size_t b = 0; b < betas.size(); ++b) {
        double mono = 1.0;
        for (std::size_t ax = 0; ax < g.dim(); ++ax)
          for (unsigned k = 0; k < betas[b][ax]; ++k) mono *= std::abs(pt[ax]);
        sup[b] = std::max(sup[b], av * mono);
      }
    }
    for (std::size_t b = 0; b < betas.size(); ++b) {
      double denom = std::pow(h, total_degree(alpha) + total_degree(betas[b])) *
                     std::pow(multi_factorial(alpha), s) *
                     std::pow(multi_factorial(betas[b]), t);
      rep.table.push_back({alpha, betas[b], sup[b] / denom});
      rep.value = std::max(rep.value, rep.table.back().value);
    }
  }
  return rep;
}

double gamma_norm(const Field& f, double s, double h, double r, int M) {
  require(M >= 0 && M <= kMaxDerivativeOrder, ErrorCode::OrderCap,
          "gamma_norm: order must lie in [0, 8]");
  require(s > 0.0 && h > 0.0 && r >= 0.0, ErrorCode::Domain,
          "gamma_norm: s, h must be positive and r >= 0");
  check_space_field(f, "gamma_norm");

  Field fhat = fourier_all(f, FtDirection::Forward);
  const Grid& g = f.grid();
  std::vector<double> pt(g.dim());
  double value = 0.0;
  for (const auto& alpha : multi_indices(f.dim(), static_cast<unsigned>(M))) {
    Field da = derivative_from_hat(fhat, alpha);
    double sup = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) {
      g.coords(i, pt);
      double nr = 0.0;
      for (double v : pt) nr += v * v;
      nr = std::sqrt(nr);
      sup = std::max(sup, std::abs(da[i]) * std::exp(-r * std::pow(nr, 1.0 / s)));
    }
    value = std::max(value,
                     sup / (std::pow(multi_factorial(alpha), s) *
                            std::pow(h, total_degree(alpha))));
  }
  return value;
}

namespace {

// 3x3 linear solve, partial pivoting
void solve3(double A[3][3], double b[3], double x[3]) {
  int piv[3] = {0, 1, 2};
  for (int c = 0; c < 3; ++c) {
    int best = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(A[piv[r]][c]) > std::abs(A[piv[best]][c])) best = r;
    std::swap(piv[c], piv[best]);
    require(A[piv[c]][c] != 0.0, ErrorCode::InsufficientData,
            "fit: singular normal equations");
    for (int r = c + 1; r < 3; ++r) {
      double m = A[piv[r]][c] / A[piv[c]][c];
      for (int k = c; k < 3; ++k) A[piv[r]][k] -= m * A[piv[c]][k];
      b[piv[r]] -= m * b[piv[c]];
    }
  }
  for (int c = 2; c >= 0; --c) {
    double acc = b[piv[c]];
    for (int k = c + 1; k < 3; ++k) acc -= A[piv[c]][k] * x[k];
    x[c] = acc / A[piv[c]][c];
  }
}

}  // namespace

DecayFit fit_stft_decay(const StftData& V, double s, DecayOrientation orientation,
                        double floor_override) {
  require(s > 0.0, ErrorCode::Domain, "fit_stft_decay: s must be positive");
  const Field& F = V.values;
  require(F.dim() % 2 == 0, ErrorCode::Shape, "fit_stft_decay: 2d-axis data expected");
  const std::size_t d = F.dim() / 2;

  const double floor = floor_override > 0.0
                           ? floor_override
                           : std::max(DBL_EPSILON * F.max_abs(), 1e-14);
  const Grid& g = F.grid();
  std::vector<double> pt(g.dim());

  // accumulate normal equations for y = c0 + c1 u + c2 v
  double A[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double rhs[3] = {0, 0, 0};
  std::size_t nodes = 0;
  std::vector<double> us, vs, ys;
  for (std::size_t i = 0; i < F.size(); ++i) {
    double mag = std::abs(F[i]);
    if (mag <= floor) continue;
    g.coords(i, pt);
    double rx = 0.0, rxi = 0.0;
    for (std::size_t ax = 0; ax < d; ++ax) rx += pt[ax] * pt[ax];
    for (std::size_t ax = d; ax < 2 * d; ++ax) rxi += pt[ax] * pt[ax];
    double u = std::pow(std::sqrt(rx), 1.0 / s);
    double v = std::pow(std::sqrt(rxi), 1.0 / s);
    double y = std::log(mag);
    double row[3] = {1.0, u, v};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) A[r][c] += row[r] * row[c];
      rhs[r] += row[r] * y;
    }
    us.push_back(u);
    vs.push_back(v);
    ys.push_back(y);
    ++nodes;
  }
  require(nodes >= 100, ErrorCode::InsufficientData,
          "fit_stft_decay: fewer than 100 nodes above the floor");

  double coef[3];
  solve3(A, rhs, coef);

  double ss = pairwise_sum(ys.size(), [&](std::size_t i) {
    double r = ys[i] - (coef[0] + coef[1] * us[i] + coef[2] * vs[i]);
    return r * r;
  });

  DecayFit fit;
  fit.s = s;
  fit.logC = coef[0];
  fit.coeff_x = coef[1];
  fit.coeff_xi = coef[2];
  fit.residual = std::sqrt(ss / static_cast<double>(nodes));
  fit.floor = floor;
  fit.nodes = nodes;
  if (orientation == DecayOrientation::XGrowth) {
    fit.h = coef[1];
    fit.eps = -coef[2];
  } else {
    fit.eps = coef[1];
    fit.h = -coef[2];
  }
  return fit;
}

StftData synthesize_decay_data(const Grid& grid, double s, double logC, double a,
                               double b) {
  const std::size_t d = grid.dim();
  std::vector<Axis> axes = grid.axes();
  for (std::size_t i = 0; i < d; ++i) axes.push_back(grid.axis(i).dual());
  Grid pg(std::move(axes));
  std::vector<AxisRole> roles(d, AxisRole::Space);
  roles.insert(roles.end(), d, AxisRole::Frequency);

  Field vals = Field::sample(pg, roles, [&](std::span<const double> p) {
    double rx = 0.0, rxi = 0.0;
    for (std::size_t ax = 0; ax < d; ++ax) rx += p[ax] * p[ax];
    for (std::size_t ax = d; ax < 2 * d; ++ax) rxi += p[ax] * p[ax];
    double mag = std::exp(logC + a * std::pow(std::sqrt(rx), 1.0 / s) +
                          b * std::pow(std::sqrt(rxi), 1.0 / s));
    return cplx{mag, 0.0};
  });
  Field window = gaussian_window(grid);
  double wl2 = window.l2_norm();
  return StftData{std::move(vals), std::move(window), wl2};
}

namespace {

Field restrict_to_subgrid(const Field& f, const Grid& sub, const char* who) {
  require(sub.dim() == f.dim(), ErrorCode::Shape,
          std::string(who) + ": ladder grid dim mismatch");
  std::vector<std::size_t> offset(sub.dim());
  for (std::size_t a = 0; a < sub.dim(); ++a) {
    const Axis& big = f.grid().axis(a);
    const Axis& small = sub.axis(a);
    require(std::abs(big.spacing() - small.spacing()) <= 1e-12 * big.spacing(),
            ErrorCode::Shape, std::string(who) + ": ladder grid spacing differs");
    require(small.halfwidth <= big.halfwidth + 1e-12, ErrorCode::Shape,
            std::string(who) + ": ladder grid exceeds the field box");
    double off = (small.origin() - big.origin()) / big.spacing();
    double rounded = std::round(off);
    require(std::abs(off - rounded) <= 1e-9, ErrorCode::OffGrid,
            std::string(who) + ": ladder grid is not lattice-aligned");
    offset[a] = static_cast<std::size_t>(rounded);
  }
  Field out = Field::zeros(sub, f.roles());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    auto idx = sub.unflatten(i);
    for (std::size_t a = 0; a < sub.dim(); ++a) idx[a] += offset[a];
    out[i] = f[f.grid().flatten(idx)];
  }
  return out;
}

bool stable(double a, double b) {
  double scale = std::max({std::abs(a), std::abs(b), 0.05});
  return std::abs(a - b) <= 0.4 * scale;
}

}  // namespace

MembershipReport classify(const Field& f, const Field& window, double s,
                          const std::vector<Grid>& ladder) {
  require(ladder.size() >= 2, ErrorCode::Input, "classify: need >= 2 nested boxes");
  MembershipReport rep;
  rep.s = s;
  StftData largest_V;
  for (const Grid& box : ladder) {
    Field fb = restrict_to_subgrid(f, box, "classify");
    Field wb = restrict_to_subgrid(window, box, "classify");
    StftData V = stft(fb, wb);
    BoxFit bf;
    bf.radius = box.axis(0).halfwidth;
    bf.x_fit = fit_stft_decay(V, s, DecayOrientation::XGrowth);
    bf.xi_fit = fit_stft_decay(V, s, DecayOrientation::XiGrowth);
    rep.fits.push_back(bf);
    largest_V = std::move(V);
  }

  const BoxFit& a = rep.fits[rep.fits.size() - 2];
  const BoxFit& b = rep.fits.back();
  const bool h_stable = stable(a.x_fit.h, b.x_fit.h);

  if (b.x_fit.h < -0.02 && b.x_fit.eps > 0.02) {
    rep.verdict = "decay-both (S_s-type)";
    return rep;
  }
  if (b.x_fit.h > 0.02 && h_stable && b.x_fit.eps > 0.0) {
    // The eps quantifier ("for every" vs "for some") is probed by refitting
    // the largest box at a deepened floor: super-exponential xi decay keeps
    // absorbing larger eps, a true exponential tail does not.
    const double peak = largest_V.values.max_abs();
    double eps_shallow =
        fit_stft_decay(largest_V, s, DecayOrientation::XGrowth, 1e-5 * peak).eps;
    double eps_deep =
        fit_stft_decay(largest_V, s, DecayOrientation::XGrowth, 1e-9 * peak).eps;
    rep.verdict = eps_deep > 1.5 * std::max(eps_shallow, 0.0) + 0.01
                      ? "Gamma-0s-consistent"
                      : "Gamma-1s-consistent";
    return rep;
  }
  if (b.xi_fit.h > 0.02 && stable(a.xi_fit.h, b.xi_fit.h) &&
      std::abs(b.xi_fit.eps) < 0.4 * std::max(b.xi_fit.h, 0.1))
    rep.verdict = "Gamma-s-consistent";
  else
    rep.verdict = "inconclusive";
  return rep;
}

std::string MembershipReport::to_json() const {
  nlohmann::ordered_json j;
  j["s"] = s;
  j["verdict"] = verdict;
  j["note"] = "diagnostic only: finite grids cannot certify class membership";
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const BoxFit& bf : fits) {
    nlohmann::ordered_json e;
    e["radius"] = bf.radius;
    e["x_fit"] = {{"h", bf.x_fit.h},        {"eps", bf.x_fit.eps},
                  {"logC", bf.x_fit.logC},  {"residual", bf.x_fit.residual},
                  {"floor", bf.x_fit.floor}, {"nodes", bf.x_fit.nodes}};
    e["xi_fit"] = {{"h", bf.xi_fit.h},        {"eps", bf.xi_fit.eps},
                   {"logC", bf.xi_fit.logC},  {"residual", bf.xi_fit.residual},
                   {"floor", bf.xi_fit.floor}, {"nodes", bf.xi_fit.nodes}};
    arr.push_back(e);
  }
  j["fits"] = arr;
  return j.dump(2);
}

double s_omega_margin(const Field& a, const Field& window, const WeightSpec& omega,
                      double s, double R) {
  require(a.grid() == window.grid(), ErrorCode::Shape,
          "s_omega_margin: symbol and window grids differ");
  require(s > 0.0, ErrorCode::Domain, "s_omega_margin: s must be positive");
  const Grid& g = a.grid();
  for (std::size_t ax = 0; ax < g.dim(); ++ax)
    require(g.axis(ax).center == 0.0, ErrorCode::OffGrid,
            "s_omega_margin: axes must be centered");
  require(window.l2_norm() > 0.0, ErrorCode::Window, "s_omega_margin: zero window");

  const std::size_t sz = g.size();
  const std::size_t d = g.dim();

  // log frequency weight R |Xi|^(1/s) on the dual lattice; the comparison
  // runs in the log domain so large R cannot overflow
  std::vector<Axis> dual_axes;
  for (std::size_t ax = 0; ax < d; ++ax) dual_axes.push_back(g.axis(ax).dual());
  Grid dual(std::move(dual_axes));
  std::vector<double> logw(sz);
  {
    std::vector<double> pt(d);
    for (std::size_t i = 0; i < sz; ++i) {
      dual.coords(i, pt);
      double r = 0.0;
      for (double v : pt) r += v * v;
      logw[i] = R * std::pow(std::sqrt(r), 1.0 / s);
    }
  }

  // |V| <= (2 pi)^{-d/2} ||a||_2 ||phi||_2 bounds the peak for the noise floor
  const double peak_bound = std::pow(2.0 * std::numbers::pi, -0.5 * double(d)) *
                            a.l2_norm() * window.l2_norm();
  const double floor = std::max(DBL_EPSILON * peak_bound, 1e-14);
  const double floor2 = floor * floor;

  const unsigned workers = thread_count();
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> partial(std::max<unsigned>(workers, 1), neg_inf);
  std::atomic<unsigned> wid{0};
  parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
    const unsigned me = wid.fetch_add(1);
    std::vector<cplx> slice(sz);
    std::vector<double> X(d);
    // per-axis rolled window offsets, rebuilt per shift
    std::vector<std::vector<std::size_t>> roll(d);
    for (std::size_t ax = 0; ax < d; ++ax) roll[ax].resize(g.axis(ax).count);
    std::vector<std::size_t> counter(d);
    double best = neg_inf;
    for (std::size_t m = lo; m < hi; ++m) {
      auto midx = g.unflatten(m);
      g.coords(m, X);
      for (std::size_t ax = 0; ax < d; ++ax) {
        const std::size_t n = g.axis(ax).count;
        for (std::size_t j = 0; j < n; ++j)
          roll[ax][j] = ((j + n + n / 2 - midx[ax]) % n) * g.strides()[ax];
      }
      std::fill(counter.begin(), counter.end(), 0);
      std::size_t roff = 0;
      for (std::size_t ax = 0; ax < d; ++ax) roff += roll[ax][0];
      for (std::size_t j = 0; j < sz; ++j) {
        slice[j] = a[j] * std::conj(window[roff]);
        for (std::size_t ax = d; ax-- > 0;) {
          roff -= roll[ax][counter[ax]];
          if (++counter[ax] < g.axis(ax).count) {
            roff += roll[ax][counter[ax]];
            break;
          }
          counter[ax] = 0;
          roff += roll[ax][0];
        }
      }
      for (std::size_t ax = 0; ax < d; ++ax)
        detail::dft_axis_inplace(slice, g, ax, FtDirection::Forward);
      const double log_wx = std::log(eval_weight(omega, X));
      for (std::size_t k = 0; k < sz; ++k) {
        const double n2 = std::norm(slice[k]);
        if (n2 <= floor2) continue;
        best = std::max(best, 0.5 * std::log(n2) + logw[k] - log_wx);
      }
    }
    partial[me] = std::max(partial[me], best);
  });
  double best = neg_inf;
  for (double p : partial) best = std::max(best, p);
  return best == neg_inf ? 0.0 : std::exp(best);
}

Field regularize(const Field& f, double eps1, double eps2) {
  require(eps1 >= 0.0 && eps2 >= 0.0, ErrorCode::Domain,
          "regularize: damping strengths must be >= 0");
  if (eps1 == 0.0 && eps2 == 0.0) return f;
  Field out = f;
  const Grid& g = f.grid();
  std::vector<double> pt(g.dim());
  for (std::size_t i = 0; i < f.size(); ++i) {
    g.coords(i, pt);
    double qx = 0.0, qxi = 0.0;
    for (std::size_t ax = 0; ax < g.dim(); ++ax) {
      if (f.roles()[ax] == AxisRole::Space)
        qx += pt[ax] * pt[ax];
      else
        qxi += pt[ax] * pt[ax];
    }
    out[i] *= std::exp(-(eps1 * qx + eps2 * qxi));
  }
  return out;
}

}  // namespace psical
