#include "psical/weights.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace psical {

using ordered_json = nlohmann::ordered_json;

double kappa(double r) {
  require(r > 0.0, ErrorCode::Domain, "kappa: r must be positive");
  return r <= 1.0 ? 1.0 : std::pow(2.0, r - 1.0);
}

WeightSpec WeightSpec::unit() { return WeightSpec{}; }

WeightSpec WeightSpec::radial(double h, double s, std::vector<std::size_t> block) {
  require(s > 0.0, ErrorCode::Domain, "weight: s must be positive");
  WeightSpec w;
  w.kind = Kind::Radial;
  w.h = h;
  w.s = s;
  w.block = std::move(block);
  return w;
}

WeightSpec WeightSpec::split(double h, double eps, double s) {
  require(s > 0.0, ErrorCode::Domain, "weight: s must be positive");
  WeightSpec w;
  w.kind = Kind::Split;
  w.h = h;
  w.eps = eps;
  w.s = s;
  return w;
}

WeightSpec WeightSpec::product(std::vector<WeightSpec> factors) {
  WeightSpec w;
  w.kind = Kind::Product;
  w.factors = std::move(factors);
  return w;
}

WeightSpec WeightSpec::extended(WeightSpec base, double R, double s) {
  require(s > 0.0, ErrorCode::Domain, "weight: s must be positive");
  WeightSpec w;
  w.kind = Kind::Extended;
  w.R = R;
  w.s = s;
  w.base.push_back(std::move(base));
  return w;
}

WeightSpec WeightSpec::power_pair(double h, double s) {
  // e^{h(|x|^{1/s} + |xi|^{1/s})}: product of one radial per point half
  WeightSpec w;
  w.kind = Kind::Product;
  WeightSpec a = radial(h, s);
  a.half = 1;
  WeightSpec b = radial(h, s);
  b.half = 2;
  w.factors = {a, b};
  w.h = h;
  w.s = s;
  return w;
}

namespace {

double norm_of(std::span<const double> v) {
  double s = 0.0;
  for (double t : v) s += t * t;
  return std::sqrt(s);
}

double norm_of_block(std::span<const double> point, std::span<const std::size_t> block) {
  if (block.empty()) return norm_of(point);
  double s = 0.0;
  for (std::size_t i : block) s += point[i] * point[i];
  return std::sqrt(s);
}

}  // namespace

double eval_weight(const WeightSpec& w, std::span<const double> point) {
  switch (w.kind) {
    case WeightSpec::Kind::Unit:
      return 1.0;
    case WeightSpec::Kind::Radial: {
      double r;
      if (w.half != 0) {
        require(point.size() % 2 == 0, ErrorCode::Shape,
                "weight: half selector needs an even-dimensional point");
        std::size_t half = point.size() / 2;
        r = w.half == 1 ? norm_of(point.subspan(0, half)) : norm_of(point.subspan(half));
      } else {
        for (std::size_t i : w.block)
          require(i < point.size(), ErrorCode::Shape, "weight: block index out of range");
        r = norm_of_block(point, w.block);
      }
      return std::exp(w.h * std::pow(r, 1.0 / w.s));
    }
    case WeightSpec::Kind::Split: {
      require(point.size() % 2 == 0, ErrorCode::Shape,
              "weight: split weight needs an even-dimensional point");
      std::size_t half = point.size() / 2;
      double rx = norm_of(point.subspan(0, half));
      double rxi = norm_of(point.subspan(half));
      return std::exp(w.h * std::pow(rx, 1.0 / w.s) - w.eps * std::pow(rxi, 1.0 / w.s));
    }
    case WeightSpec::Kind::Product: {
      double v = 1.0;
      for (const WeightSpec& f : w.factors) v *= eval_weight(f, point);
      return v;
    }
    case WeightSpec::Kind::Extended: {
      require(w.base.size() == 1, ErrorCode::Shape, "weight: extended needs one base");
      require(point.size() % 2 == 0, ErrorCode::Shape,
              "weight: extended weight needs an even-dimensional point");
      std::size_t half = point.size() / 2;
      double v = eval_weight(w.base[0], point.subspan(0, half));
      std::span<const double> Y = point.subspan(half);
      require(Y.size() % 2 == 0, ErrorCode::Shape,
              "weight: extended Y block must split in halves");
      std::size_t q = Y.size() / 2;
      double r1 = norm_of(Y.subspan(0, q));
      double r2 = norm_of(Y.subspan(q));
      return v * std::exp(-w.R * (std::pow(r1, 1.0 / w.s) + std::pow(r2, 1.0 / w.s)));
    }
  }
  fail(ErrorCode::Shape, "weight: unknown kind");
}

namespace {

const char* kind_name(WeightSpec::Kind k) {
  switch (k) {
    case WeightSpec::Kind::Unit: return "unit";
    case WeightSpec::Kind::Radial: return "radial";
    case WeightSpec::Kind::Split: return "split";
    case WeightSpec::Kind::Product: return "product";
    case WeightSpec::Kind::Extended: return "extended";
  }
  return "unit";
}

ordered_json weight_to_json(const WeightSpec& w) {
  ordered_json j;
  j["kind"] = kind_name(w.kind);
  switch (w.kind) {
    case WeightSpec::Kind::Unit:
      break;
    case WeightSpec::Kind::Radial:
      j["h"] = w.h;
      j["s"] = w.s;
      if (!w.block.empty()) j["block"] = w.block;
      if (w.half != 0) j["half"] = w.half;
      break;
    case WeightSpec::Kind::Split:
      j["h"] = w.h;
      j["eps"] = w.eps;
      j["s"] = w.s;
      break;
    case WeightSpec::Kind::Product: {
      ordered_json arr = ordered_json::array();
      for (const WeightSpec& f : w.factors) arr.push_back(weight_to_json(f));
      j["factors"] = arr;
      break;
    }
    case WeightSpec::Kind::Extended:
      j["base"] = weight_to_json(w.base[0]);
      j["R"] = w.R;
      j["s"] = w.s;
      break;
  }
  return j;
}

WeightSpec weight_from_json(const ordered_json& j) {
  require(j.is_object() && j.contains("kind"), ErrorCode::Config,
          "weight json: object with a kind field expected");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "unit") return WeightSpec::unit();
  if (kind == "radial") {
    std::vector<std::size_t> block;
    if (j.contains("block")) block = j.at("block").get<std::vector<std::size_t>>();
    WeightSpec w = WeightSpec::radial(j.at("h").get<double>(), j.at("s").get<double>(), block);
    if (j.contains("half")) w.half = j.at("half").get<int>();
    return w;
  }
  if (kind == "split")
    return WeightSpec::split(j.at("h").get<double>(), j.at("eps").get<double>(),
                             j.at("s").get<double>());
  if (kind == "product") {
    std::vector<WeightSpec> fs;
    for (const auto& f : j.at("factors")) fs.push_back(weight_from_json(f));
    return WeightSpec::product(std::move(fs));
  }
  if (kind == "extended")
    return WeightSpec::extended(weight_from_json(j.at("base")), j.at("R").get<double>(),
                                j.at("s").get<double>());
  fail(ErrorCode::Config, "weight json: unknown kind '" + kind + "'");
}

}  // namespace

std::string WeightSpec::to_json() const { return weight_to_json(*this).dump(); }

WeightSpec WeightSpec::from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, /*allow_exceptions=*/false);
  require(!j.is_discarded(), ErrorCode::Config, "weight json: parse error");
  return weight_from_json(j);
}

std::size_t SweepBox::size() const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < dim; ++i) n *= points;
  return n;
}

namespace {

void box_point(const SweepBox& box, std::size_t flat, std::span<double> out) {
  for (std::size_t i = box.dim; i-- > 0;) {
    out[i] = box.coord(flat % box.points);
    flat /= box.points;
  }
}

}  // namespace

double moderateness_margin(const WeightSpec& w, double c, double s, const SweepBox& box) {
  require(s > 0.0, ErrorCode::Domain, "moderateness_margin: s must be positive");
  const std::size_t n = box.size();
  std::vector<double> x(box.dim), y(box.dim), xy(box.dim);
  double margin = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    box_point(box, i, x);
    const double wx = eval_weight(w, x);
    for (std::size_t j = 0; j < n; ++j) {
      box_point(box, j, y);
      bool inside = true;
      for (std::size_t k = 0; k < box.dim; ++k) {
        xy[k] = x[k] + y[k];
        if (std::abs(xy[k]) > box.radius * (1.0 + 1e-12)) inside = false;
      }
      if (!inside) continue;
      double ny = norm_of(y);
      double ratio = eval_weight(w, xy) / (wx * std::exp(c * std::pow(ny, 1.0 / s)));
      margin = std::max(margin, ratio);
    }
  }
  return margin;
}

namespace {

double m_series(double s2, double r, std::size_t max_terms) {
  // sum_j r^j / (j!)^(2s), computed by term recurrence t_j = t_{j-1} r / j^(2s).
  // max_terms == 0 keeps only the zeroth term.
  double sum = 1.0, term = 1.0;
  if (max_terms == 0) return sum;
  for (std::size_t j = 1; j <= max_terms; ++j) {
    term *= r / std::pow(static_cast<double>(j), s2);
    sum += term;
    if (term < 1e-16 * sum) return sum;
  }
  fail(ErrorCode::Truncation, "m_s_tau: series truncation budget exhausted");
}

}  // namespace

double m_s_tau(const MultiplierParams& p, std::span<const double> x) {
  require(p.s >= 0.5, ErrorCode::Domain, "m_s_tau: s must be >= 1/2");
  require(p.tau > 0.0, ErrorCode::Domain, "m_s_tau: tau must be positive");
  double bracket_sq = 1.0;
  for (double t : x) bracket_sq += t * t;
  return m_series(2.0 * p.s, p.tau * bracket_sq, p.max_terms);
}

double m_s_tau_1d(const MultiplierParams& p, double x) {
  return m_s_tau(p, std::span<const double>(&x, 1));
}

PaolaBounds paola_check(const MultiplierParams& p, double eta, double eps,
                        const SweepBox& box) {
  require(eps > 0.0 && eps < 2.0 * p.s, ErrorCode::Domain,
          "paola_check: eps must lie in (0, 2s)");
  PaolaBounds out;
  std::vector<double> x(box.dim);
  const double pref = std::pow(eta, 1.0 / (2.0 * p.s));
  for (std::size_t i = 0; i < box.size(); ++i) {
    box_point(box, i, x);
    double bracket = std::sqrt(1.0 + norm_of(x) * norm_of(x));
    double grow = std::pow(bracket, 1.0 / p.s);
    double m = m_s_tau(p, x);
    out.c_low = std::max(out.c_low, std::exp((2.0 * p.s - eps) * pref * grow) / m);
    out.c_high = std::max(out.c_high, m / std::exp((2.0 * p.s + eps) * pref * grow));
  }
  return out;
}

WeightRatioReport weight_ratio_check(double h1, double h2, double r1, double r2,
                                     double s, double A, const SweepBox& box,
                                     double tol) {
  require(s > 0.0, ErrorCode::Domain, "weight_ratio_check: s must be positive");
  require(box.dim == 4, ErrorCode::Shape, "weight_ratio_check: box must have 4 axes");
  const double inv_s = 1.0 / s;
  const double two_pow = std::pow(2.0, inv_s);
  auto pw = [&](double t) { return std::pow(std::abs(t), inv_s); };

  double max_log_ratio = -std::numeric_limits<double>::infinity();
  double worst = -std::numeric_limits<double>::infinity();

  const std::size_t n = box.points;
  for (std::size_t ix = 0; ix < n; ++ix) {
    double x = box.coord(ix);
    for (std::size_t ixi = 0; ixi < n; ++ixi) {
      double xi = box.coord(ixi);
      for (std::size_t ieta = 0; ieta < n; ++ieta) {
        double eta = box.coord(ieta);
        for (std::size_t iy = 0; iy < n; ++iy) {
          double y = box.coord(iy);
          // general-A quotient, log domain
          double num = h2 * (pw(x - A * y) + pw(xi + (1.0 - A) * eta));
          double den = h1 * (pw(x + (1.0 - A) * y) + pw(xi - A * eta)) -
                       r1 * (pw(x) + pw(xi)) + r2 * (pw(y) + pw(eta));
          max_log_ratio = std::max(max_log_ratio, num - den);
          // proof-displayed scalar inequalities
          double v1 = h2 * pw(2.0 * x - y) - h1 * pw(2.0 * x + y) -
                      two_pow * (r2 * pw(y) - r1 * pw(x));
          double v2 = h2 * pw(2.0 * xi + eta) - h1 * pw(2.0 * xi - eta) -
                      two_pow * (r2 * pw(eta) - r1 * pw(xi));
          worst = std::max(worst, std::max(v1, v2));
        }
      }
    }
  }
  WeightRatioReport rep;
  rep.max_ratio = std::exp(max_log_ratio);
  rep.worst_violation = worst;
  rep.pointwise_ok = worst <= tol;
  return rep;
}

RhocondFamily rhocond_family(double s, double h, double eps) {
  const double k = kappa(1.0 / s);
  RhocondFamily f;
  f.h2 = eps / k - std::pow(2.0, -1.0 / s) * k * h;
  f.h1 = k * (h + f.h2);
  f.r1 = h;
  f.r2 = eps;
  return f;
}

}  // namespace psical
