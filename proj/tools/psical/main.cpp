// psical: batch front door for field/symbol generation, quantization,
// symbol calculus, STFT analysis, verification suites and benchmarks.
//
// Verbs: gen, stft, fit, quantize, apply, transfer, change-quant, sharp,
// verify, bench. A JSON job file (--config) provides defaults; command-line
// flags override it. PSICAL_THREADS caps worker threads.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage/config error,
// 3 numerical guard (truncation budget, memory cap). Failures emit a
// machine-readable JSON object on stderr.

#include <CLI11.hpp>

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <nlohmann/json.hpp>

#include "psical/acceptance.hpp"
#include "psical/calculus.hpp"
#include "psical/continuity.hpp"
#include "psical/fft.hpp"
#include "psical/hermite.hpp"
#include "psical/io.hpp"
#include "psical/stft.hpp"

using namespace psical;
namespace fs = std::filesystem;

namespace {

struct JobConfig {
  double grid_l = 12.0;
  unsigned grid_n = 128;
  std::string preset = "gaussian";
  std::string kind = "func";  // func | symbol
  std::string quant = "kn";   // kn | weyl | one | numeric t | matrix entries
  std::string weight_json;
  std::string in, window, matrix, a1, a2;
  std::string out = ".";
  std::string orientation = "x";
  std::string route = "kernel";  // kernel | tensor
  std::string suite = "all";
  double s = 1.0;
  int sign = 1;
  std::string quant_to = "weyl";
};

const std::vector<std::string> kKnownKeys = {
    "grid_l", "grid_n", "preset", "kind",  "quant", "weight", "in",
    "window", "matrix", "a1",     "a2",    "out",   "orientation",
    "route",  "suite",  "s",      "sign",  "quant_to"};

void load_config(const std::string& path, JobConfig& cfg) {
  std::ifstream is(path);
  require(bool(is), ErrorCode::Config, "config: cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(is, nullptr, false);
  require(!j.is_discarded() && j.is_object(), ErrorCode::Config,
          "config: not a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const auto& k : kKnownKeys) known = known || k == it.key();
    require(known, ErrorCode::Config, "config: unknown key '" + it.key() + "'");
  }
  auto getd = [&](const char* k, double& v) { if (j.contains(k)) v = j.at(k).get<double>(); };
  auto getu = [&](const char* k, unsigned& v) { if (j.contains(k)) v = j.at(k).get<unsigned>(); };
  auto gets = [&](const char* k, std::string& v) { if (j.contains(k)) v = j.at(k).get<std::string>(); };
  getd("grid_l", cfg.grid_l);
  getu("grid_n", cfg.grid_n);
  gets("preset", cfg.preset);
  gets("kind", cfg.kind);
  gets("quant", cfg.quant);
  gets("weight", cfg.weight_json);
  gets("in", cfg.in);
  gets("window", cfg.window);
  gets("matrix", cfg.matrix);
  gets("a1", cfg.a1);
  gets("a2", cfg.a2);
  gets("out", cfg.out);
  gets("orientation", cfg.orientation);
  gets("route", cfg.route);
  gets("suite", cfg.suite);
  getd("s", cfg.s);
  if (j.contains("sign")) cfg.sign = j.at("sign").get<int>();
  gets("quant_to", cfg.quant_to);
}

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::stod(cur));
  return out;
}

QuantizationMatrix parse_quant(const std::string& text) {
  if (text == "kn") return QuantizationMatrix::kn(1);
  if (text == "weyl") return QuantizationMatrix::weyl(1);
  if (text == "one") return QuantizationMatrix::one(1);
  std::vector<double> vals;
  try {
    vals = split_numbers(text);
  } catch (...) {
    fail(ErrorCode::Config, "quantization: expected kn|weyl|one, t, or matrix entries");
  }
  if (vals.size() == 1) return QuantizationMatrix::scaled(1, vals[0]);
  std::size_t d = static_cast<std::size_t>(std::sqrt(double(vals.size())));
  require(d * d == vals.size(), ErrorCode::Config,
          "quantization: matrix entry count must be a square");
  return QuantizationMatrix::general(Mat(d, vals));
}

// preset strings: gaussian[:width], hermite:k, damped-poly:a,b,sigma,
// growth:h,s, const[:re[,im]]
Field make_preset(const JobConfig& cfg) {
  Grid g = make_grid_1d(0.0, cfg.grid_l, cfg.grid_n);
  std::string name = cfg.preset, args;
  if (auto pos = name.find(':'); pos != std::string::npos) {
    args = name.substr(pos + 1);
    name = name.substr(0, pos);
  }
  const bool symbol = cfg.kind == "symbol";
  require(cfg.kind == "func" || cfg.kind == "symbol", ErrorCode::Config,
          "kind must be func or symbol");

  if (name == "gaussian") {
    double w = args.empty() ? 1.0 : std::stod(args);
    if (!symbol)
      return Field::sample(g, {AxisRole::Space}, [w](std::span<const double> x) {
        return cplx{std::exp(-0.5 * x[0] * x[0] / (w * w)), 0.0};
      });
    return symbol_grid_field(g, [w](double x, double xi) {
      return cplx{std::exp(-0.5 * (x * x + xi * xi) / (w * w)), 0.0};
    });
  }
  if (name == "hermite") {
    require(!symbol, ErrorCode::Config, "hermite preset is a function, not a symbol");
    unsigned k = args.empty() ? 0 : static_cast<unsigned>(std::stoul(args));
    return hermite_function(k, g);
  }
  if (name == "damped-poly") {
    require(symbol, ErrorCode::Config, "damped-poly preset is a symbol");
    auto v = split_numbers(args);
    require(v.size() == 3, ErrorCode::Config, "damped-poly:alpha,beta,sigma expected");
    PolySymbol p = PolySymbol::monomial_1d(static_cast<unsigned>(v[0]),
                                           static_cast<unsigned>(v[1]), {1.0, 0.0}, v[2]);
    return render(p, symbol_grid(g));
  }
  if (name == "growth") {
    require(symbol, ErrorCode::Config, "growth preset is a symbol");
    auto v = split_numbers(args);
    require(v.size() == 2, ErrorCode::Config, "growth:h,s expected");
    const double h = v[0], s = v[1], edge = cfg.grid_l * 0.75;
    return symbol_grid_field(g, [h, s, edge](double x, double xi) {
      double damp = std::exp(-std::pow(x / edge, 8.0) - xi * xi / 32.0);
      return cplx{std::exp(h * std::pow(std::abs(x), 1.0 / s)) * damp, 0.0};
    });
  }
  if (name == "const") {
    auto v = args.empty() ? std::vector<double>{1.0} : split_numbers(args);
    cplx c{v[0], v.size() > 1 ? v[1] : 0.0};
    if (!symbol) return Field::constant(g, {AxisRole::Space}, c);
    return symbol_grid_field(g, [c](double, double) { return c; });
  }
  fail(ErrorCode::Config, "unknown preset '" + name + "'");
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream os(path);
  require(bool(os), ErrorCode::Io, "cannot open " + path);
  os << header << "\n";
  for (const auto& r : rows) os << r << "\n";
}

std::string csvf(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

int verb_gen(const JobConfig& cfg) {
  Field f = make_preset(cfg);
  fs::create_directories(cfg.out);
  write_gsf1((fs::path(cfg.out) / "field.gsf").string(), f);
  return 0;
}

int verb_stft(const JobConfig& cfg) {
  require(!cfg.in.empty(), ErrorCode::Config, "stft: --in required");
  Field f = read_gsf1(cfg.in);
  Field w = cfg.window.empty() ? gaussian_window(f.grid()) : read_gsf1(cfg.window);
  StftData V = stft(f, w);
  fs::create_directories(cfg.out);
  fs::path dir(cfg.out);
  write_stft((dir / "stft.gsf").string(), (dir / "stft.window.gsf").string(),
             (dir / "stft.json").string(), V);
  if (!cfg.weight_json.empty()) {
    MixedNormSpec spec;
    spec.p = 2.0;
    spec.q = 2.0;
    spec.weight = WeightSpec::from_json(cfg.weight_json);
    write_csv((dir / "modnorm.csv").string(), "p,q,mod_norm",
              {csvf("%g,%g,%.17g", spec.p, spec.q, mod_norm(f, w, spec))});
  }
  return 0;
}

int verb_fit(const JobConfig& cfg) {
  require(!cfg.in.empty(), ErrorCode::Config, "fit: --in (stft sidecar) required");
  StftData V = read_stft(cfg.in);
  DecayOrientation o = cfg.orientation == "xi" ? DecayOrientation::XiGrowth
                                               : DecayOrientation::XGrowth;
  DecayFit fit = fit_stft_decay(V, cfg.s, o);
  fs::create_directories(cfg.out);
  write_csv((fs::path(cfg.out) / "fit.csv").string(),
            "s,h,eps,logC,residual,floor,box_radius,nodes",
            {csvf("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%zu", fit.s, fit.h, fit.eps,
                  fit.logC, fit.residual, fit.floor,
                  V.values.grid().axis(0).halfwidth, fit.nodes)});
  return 0;
}

int verb_quantize(const JobConfig& cfg) {
  Field a = cfg.in.empty() ? make_preset(cfg) : read_gsf1(cfg.in);
  QuantizationMatrix A = parse_quant(cfg.quant);
  OperatorMatrix M = op_matrix(a, A);
  fs::create_directories(cfg.out);
  write_gsm1((fs::path(cfg.out) / "op.gsm").string(), M);
  write_csv((fs::path(cfg.out) / "op.csv").string(),
            "rows,cols,inf_norm,frobenius,hermitian_defect",
            {csvf("%zu,%zu,%.17g,%.17g,%.17g", M.rows(), M.cols(), M.inf_norm(),
                  M.frobenius(), M.rows() == M.cols() ? M.hermitian_defect() : -1.0)});
  return 0;
}

int verb_apply(const JobConfig& cfg) {
  require(!cfg.in.empty(), ErrorCode::Config, "apply: --in required");
  Field f = read_gsf1(cfg.in);
  Field g = [&] {
    if (!cfg.matrix.empty()) return read_gsm1(cfg.matrix).apply(f);
    require(!cfg.a1.empty(), ErrorCode::Config, "apply: --matrix or --a1 (symbol) required");
    Field a = read_gsf1(cfg.a1);
    return kernel_apply(kernel_from_symbol(a, parse_quant(cfg.quant)), f);
  }();
  fs::create_directories(cfg.out);
  write_gsf1((fs::path(cfg.out) / "applied.gsf").string(), g);
  return 0;
}

int verb_transfer(const JobConfig& cfg) {
  Field a = cfg.in.empty() ? make_preset(cfg) : read_gsf1(cfg.in);
  QuantizationMatrix A = parse_quant(cfg.quant);
  require(cfg.sign == 1 || cfg.sign == -1, ErrorCode::Config, "transfer: sign must be +-1");
  Field b = transfer(a, A.A, cfg.sign);
  Field back = transfer(b, A.A, -cfg.sign);
  fs::create_directories(cfg.out);
  write_gsf1((fs::path(cfg.out) / "transferred.gsf").string(), b);
  write_csv((fs::path(cfg.out) / "transfer.csv").string(), "roundtrip_max_abs",
            {csvf("%.17g", max_abs_diff(back, a))});
  return 0;
}

int verb_change_quant(const JobConfig& cfg) {
  Field a = cfg.in.empty() ? make_preset(cfg) : read_gsf1(cfg.in);
  QuantizationMatrix A = parse_quant(cfg.quant);
  QuantizationMatrix B = parse_quant(cfg.quant_to);
  Field b = quantization_change(a, A.A, B.A);
  OperatorMatrix MA = op_matrix(a, A);
  OperatorMatrix MB = op_matrix(b, B);
  double worst = 0.0;
  for (std::size_t i = 0; i < MA.entries().size(); ++i)
    worst = std::max(worst, std::abs(MA.entries()[i] - MB.entries()[i]));
  fs::create_directories(cfg.out);
  write_gsf1((fs::path(cfg.out) / "changed.gsf").string(), b);
  write_csv((fs::path(cfg.out) / "change-quant.csv").string(),
            "operator_equality_max_abs,rel_inf",
            {csvf("%.17g,%.17g", worst, worst / MA.max_abs())});
  return 0;
}

int verb_sharp(const JobConfig& cfg) {
  require(!cfg.a1.empty() && !cfg.a2.empty(), ErrorCode::Config,
          "sharp: --a1 and --a2 required");
  Field a1 = read_gsf1(cfg.a1);
  Field a2 = read_gsf1(cfg.a2);
  QuantizationMatrix A = parse_quant(cfg.quant);
  require(cfg.route == "kernel" || cfg.route == "tensor", ErrorCode::Config,
          "sharp: route must be kernel or tensor");
  Field s = cfg.route == "kernel" ? sharp(a1, a2, A) : sharp_tensor(a1, a2, A);

  OperatorMatrix prod = op_matrix(a1, A).multiply(op_matrix(a2, A));
  OperatorMatrix Ms = op_matrix(s, A);
  double worst = 0.0;
  for (std::size_t i = 0; i < prod.entries().size(); ++i)
    worst = std::max(worst, std::abs(prod.entries()[i] - Ms.entries()[i]));
  fs::create_directories(cfg.out);
  write_gsf1((fs::path(cfg.out) / "sharp.gsf").string(), s);
  write_csv((fs::path(cfg.out) / "sharp.csv").string(),
            "route,composition_residual_max_abs,rel_frobenius",
            {csvf("%s,%.17g,%.17g", cfg.route.c_str(), worst,
                  [&] {
                    OperatorMatrix D = Ms;
                    for (std::size_t i = 0; i < D.rows(); ++i)
                      for (std::size_t j = 0; j < D.cols(); ++j)
                        D.at(i, j) -= prod.at(i, j);
                    return D.frobenius() / prod.frobenius();
                  }())});
  return 0;
}

int verb_verify(const JobConfig& cfg) {
  auto rows = accept::run_suite(cfg.suite);
  fs::create_directories(cfg.out);
  std::vector<std::string> lines;
  int failures = 0;
  for (const auto& r : rows) {
    std::puts(accept::format_row(r).c_str());
    lines.push_back(csvf("%d,\"%s\",%.17g,%.17g,%s", r.criterion, r.name.c_str(),
                         r.measured, r.threshold, r.pass ? "pass" : "fail"));
    if (!r.pass) ++failures;
  }
  write_csv((fs::path(cfg.out) / "verify.csv").string(),
            "criterion,name,measured,threshold,status", lines);
  return failures == 0 ? 0 : 1;
}

int verb_bench(const JobConfig& cfg) {
  using clock = std::chrono::steady_clock;
  auto time_it = [](auto&& fn) {
    auto t0 = clock::now();
    fn();
    return std::chrono::duration<double>(clock::now() - t0).count();
  };
  Grid g = make_grid_1d(0.0, 12.0, cfg.grid_n);
  Field f = gaussian_window(g);
  Field a = symbol_grid_field(g, [](double x, double xi) {
    return cplx{std::exp(-0.5 * (x * x + xi * xi)), 0.0};
  });

  std::vector<std::string> rows;
  rows.push_back(csvf("fourier_roundtrip,%u,%.6f", cfg.grid_n, time_it([&] {
    Field b = fourier_all(fourier_all(f, FtDirection::Forward), FtDirection::Inverse);
    (void)b;
  })));
  rows.push_back(csvf("stft,%u,%.6f", cfg.grid_n, time_it([&] { (void)stft(f, f); })));
  rows.push_back(csvf("kernel_from_symbol,%u,%.6f", cfg.grid_n, time_it([&] {
    (void)kernel_from_symbol(a, QuantizationMatrix::weyl(1));
  })));
  rows.push_back(csvf("op_matrix_multiply,%u,%.6f", cfg.grid_n, time_it([&] {
    OperatorMatrix M = op_matrix(a, QuantizationMatrix::weyl(1));
    (void)M.multiply(M);
  })));
  rows.push_back(csvf("sharp_kernel_route,%u,%.6f", cfg.grid_n, time_it([&] {
    (void)sharp(a, a, QuantizationMatrix::weyl(1));
  })));
  for (const auto& r : rows) std::puts(r.c_str());
  fs::create_directories(cfg.out);
  write_csv((fs::path(cfg.out) / "bench.csv").string(), "name,n,seconds", rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudodifferential operator workbench"};
  app.require_subcommand(1);

  JobConfig cfg;
  std::string config_path, grid_spec;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON job file; flags override it");
    sub->add_option("--grid", grid_spec, "grid as L,N (centered box)");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--s", cfg.s, "regularity parameter s");
    sub->add_option("--t,--A", cfg.quant, "quantization: kn|weyl|one, t, or matrix");
    sub->add_option("--weight", cfg.weight_json, "weight spec as JSON");
    return sub;
  };

  auto* gen = add_common(app.add_subcommand("gen", "generate a field or symbol preset"));
  gen->add_option("--preset", cfg.preset, "gaussian[:w]|hermite:k|damped-poly:a,b,sg|growth:h,s|const[:v]");
  gen->add_option("--kind", cfg.kind, "func | symbol");

  auto* st = add_common(app.add_subcommand("stft", "short-time Fourier transform"));
  st->add_option("--in", cfg.in, "input field (GSF1)");
  st->add_option("--window", cfg.window, "window field (GSF1); default Gaussian");

  auto* fit = add_common(app.add_subcommand("fit", "decay fit of STFT data"));
  fit->add_option("--in", cfg.in, "stft sidecar JSON");
  fit->add_option("--orientation", cfg.orientation, "x | xi");

  auto* qz = add_common(app.add_subcommand("quantize", "operator matrix of a symbol"));
  qz->add_option("--in", cfg.in, "symbol field (GSF1); default: the preset");
  qz->add_option("--preset", cfg.preset, "symbol preset when --in is absent");
  qz->add_option("--kind", cfg.kind, "func | symbol");

  auto* ap = add_common(app.add_subcommand("apply", "apply an operator to a field"));
  ap->add_option("--in", cfg.in, "input field (GSF1)");
  ap->add_option("--matrix", cfg.matrix, "operator matrix (GSM1)");
  ap->add_option("--a1", cfg.a1, "symbol field (GSF1) if no matrix given");

  auto* tr = add_common(app.add_subcommand("transfer", "quantization-transfer operator"));
  tr->add_option("--in", cfg.in, "symbol field (GSF1)");
  tr->add_option("--sign", cfg.sign, "+1 or -1");
  tr->add_option("--preset", cfg.preset, "symbol preset when --in is absent");
  tr->add_option("--kind", cfg.kind, "func | symbol");

  auto* cq = add_common(app.add_subcommand("change-quant", "re-express a symbol in another quantization"));
  cq->add_option("--in", cfg.in, "symbol field (GSF1)");
  cq->add_option("--to", cfg.quant_to, "target quantization");
  cq->add_option("--preset", cfg.preset, "symbol preset when --in is absent");
  cq->add_option("--kind", cfg.kind, "func | symbol");

  auto* sh = add_common(app.add_subcommand("sharp", "composition symbol"));
  sh->add_option("--a1", cfg.a1, "first symbol (GSF1)");
  sh->add_option("--a2", cfg.a2, "second symbol (GSF1)");
  sh->add_option("--route", cfg.route, "kernel | tensor");

  auto* vf = add_common(app.add_subcommand("verify", "run a named acceptance suite"));
  vf->add_option("--suite", cfg.suite, "stft|quantize|transfer|sharp|weights|continuity|all");

  auto* bn = add_common(app.add_subcommand("bench", "timing table for the core pipelines"));
  (void)bn;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) {
      // flags override the file: re-parse after loading defaults
      load_config(config_path, cfg);
      app.clear();
      app.parse(argc, argv);
    }
    if (!grid_spec.empty()) {
      auto v = split_numbers(grid_spec);
      require(v.size() == 2, ErrorCode::Config, "--grid expects L,N");
      cfg.grid_l = v[0];
      cfg.grid_n = static_cast<unsigned>(v[1]);
    }
    if (gen->parsed()) return verb_gen(cfg);
    if (st->parsed()) return verb_stft(cfg);
    if (fit->parsed()) return verb_fit(cfg);
    if (qz->parsed()) return verb_quantize(cfg);
    if (ap->parsed()) return verb_apply(cfg);
    if (tr->parsed()) return verb_transfer(cfg);
    if (cq->parsed()) return verb_change_quant(cfg);
    if (sh->parsed()) return verb_sharp(cfg);
    if (vf->parsed()) return verb_verify(cfg);
    if (bn->parsed()) return verb_bench(cfg);
    fail(ErrorCode::Config, "no verb selected");
  } catch (const Error& e) {
    nlohmann::ordered_json j;
    j["error"] = e.what();
    int rc = 1;
    switch (e.code()) {
      case ErrorCode::Config:
      case ErrorCode::Input:
        j["code"] = "usage";
        rc = 2;
        break;
      case ErrorCode::Truncation:
      case ErrorCode::MemoryGuard:
        j["code"] = "numerical-guard";
        rc = 3;
        break;
      default:
        j["code"] = "runtime";
        rc = 1;
    }
    std::cerr << j.dump() << "\n";
    return rc;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::ordered_json{{"error", e.what()}, {"code", "runtime"}}.dump()
              << "\n";
    return 1;
  }
}
