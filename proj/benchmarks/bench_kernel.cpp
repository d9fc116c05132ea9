#include <benchmark/benchmark.h>

#include "jetlab/kernel.hpp"
#include "jetlab/rng.hpp"

using namespace jetlab;

static void BM_EvalKernel(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  std::vector<double> w(m, 1.5);
  ProductKernel k(w);
  Rng rng(7);
  std::vector<Cx> zc(m), wc(m);
  for (int j = 0; j < m; ++j) {
    zc[j] = rng.disc(0.7);
    wc[j] = rng.disc(0.7);
  }
  Point z(zc), wp(wc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_kernel(k, z, wp));
  }
}
BENCHMARK(BM_EvalKernel)->Arg(2)->Arg(4)->Arg(8);

static void BM_MixedPartial(benchmark::State& state) {
  int total = static_cast<int>(state.range(0));
  ProductKernel k({1.3, 2.1, 0.7});
  Rng rng(8);
  Point z({rng.disc(0.7), rng.disc(0.7), rng.disc(0.7)});
  Point w({rng.disc(0.7), rng.disc(0.7), rng.disc(0.7)});
  std::vector<int> zo(3, 0), wo(3, 0);
  for (int t = 0; t < total; ++t) (t % 2 ? zo : wo)[t % 3] += 1;
  DerivOrder d(zo, wo);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixed_partial(k, d, z, w));
  }
}
BENCHMARK(BM_MixedPartial)->Arg(2)->Arg(4)->Arg(6);

static void BM_FdOracle(benchmark::State& state) {
  ProductKernel k({1.3, 2.1});
  Point z({Cx(0.4, 0.1), Cx(-0.3, 0.2)});
  Point w({Cx(0.2, -0.1), Cx(0.1, 0.3)});
  DerivOrder d({1, 1}, {1, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(fd_mixed_partial(k, d, z, w).value);
  }
}
BENCHMARK(BM_FdOracle);
