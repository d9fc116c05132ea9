#include <benchmark/benchmark.h>

#include "jetlab/quotient.hpp"

using namespace jetlab;

static void BM_SeriesGram(benchmark::State& state) {
  int p = static_cast<int>(state.range(0));
  ProductKernel k({1.0, 2.0, 3.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(series_gram(k, 2, p));
  }
}
BENCHMARK(BM_SeriesGram)->Arg(40)->Arg(256);

static void BM_CompressedOperator(benchmark::State& state) {
  ProductKernel k({1.0, 2.0, 3.0});
  SeriesGram g = series_gram(k, 2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compressed_operator_matrix(g));
  }
}
BENCHMARK(BM_CompressedOperator)->Arg(40);

BENCHMARK_MAIN();
