#include <benchmark/benchmark.h>

#include <cmath>

#include "psical/calculus.hpp"
#include "psical/fft.hpp"
#include "psical/hermite.hpp"
#include "psical/stft.hpp"
#include "psical/weights.hpp"

using namespace psical;

namespace {

Field gaussian_f(std::int64_t n) {
  Grid g = make_grid_1d(0.0, 12.0, static_cast<std::uint32_t>(n));
  return gaussian_window(g);
}

Field gaussian_sym(std::int64_t n) {
  Grid g = make_grid_1d(0.0, 12.0, static_cast<std::uint32_t>(n));
  return symbol_grid_field(g, [](double x, double xi) {
    return cplx{std::exp(-0.5 * (x * x + xi * xi)), 0.0};
  });
}

}  // namespace

static void BM_FourierRoundtrip(benchmark::State& state) {
  Field f = gaussian_f(state.range(0));
  for (auto _ : state) {
    Field b = fourier_all(fourier_all(f, FtDirection::Forward), FtDirection::Inverse);
    benchmark::DoNotOptimize(b.values().data());
  }
}
BENCHMARK(BM_FourierRoundtrip)->Arg(128)->Arg(256)->Arg(512);

static void BM_Stft(benchmark::State& state) {
  Field f = gaussian_f(state.range(0));
  for (auto _ : state) {
    StftData v = stft(f, f);
    benchmark::DoNotOptimize(v.values.values().data());
  }
}
BENCHMARK(BM_Stft)->Arg(128)->Arg(256);

static void BM_KernelFromSymbol(benchmark::State& state) {
  Field a = gaussian_sym(state.range(0));
  for (auto _ : state) {
    OperatorKernel k = kernel_from_symbol(a, QuantizationMatrix::weyl(1));
    benchmark::DoNotOptimize(k.values.values().data());
  }
}
BENCHMARK(BM_KernelFromSymbol)->Arg(128)->Arg(256);

static void BM_OpMatrixMultiply(benchmark::State& state) {
  Field a = gaussian_sym(state.range(0));
  OperatorMatrix m = op_matrix(a, QuantizationMatrix::weyl(1));
  for (auto _ : state) {
    OperatorMatrix p = m.multiply(m);
    benchmark::DoNotOptimize(p.entries().data());
  }
}
BENCHMARK(BM_OpMatrixMultiply)->Arg(64)->Arg(128)->Arg(256);

static void BM_SharpKernelRoute(benchmark::State& state) {
  Field a = gaussian_sym(state.range(0));
  for (auto _ : state) {
    Field s = sharp(a, a, QuantizationMatrix::weyl(1));
    benchmark::DoNotOptimize(s.values().data());
  }
}
BENCHMARK(BM_SharpKernelRoute)->Arg(64)->Arg(128);

static void BM_Transfer(benchmark::State& state) {
  Field a = gaussian_sym(state.range(0));
  Mat A(1, {0.5});
  for (auto _ : state) {
    Field b = transfer(a, A, +1);
    benchmark::DoNotOptimize(b.values().data());
  }
}
BENCHMARK(BM_Transfer)->Arg(128)->Arg(256);

static void BM_WeightRatioSweep(benchmark::State& state) {
  RhocondFamily fam = rhocond_family(0.5, 0.3, 1.0);
  for (auto _ : state) {
    WeightRatioReport rep = weight_ratio_check(fam.h1, fam.h2, fam.r1, fam.r2, 0.5, 0.5,
                                               SweepBox{4, 8.0, 17});
    benchmark::DoNotOptimize(rep.max_ratio);
  }
}
BENCHMARK(BM_WeightRatioSweep);

BENCHMARK_MAIN();
