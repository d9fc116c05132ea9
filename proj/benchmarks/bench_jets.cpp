#include <benchmark/benchmark.h>

#include "jetlab/decomposition.hpp"
#include "jetlab/jets.hpp"

using namespace jetlab;

static void BM_JetGram(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  int k = static_cast<int>(state.range(1));
  std::vector<double> w(m, 1.2);
  ProductKernel kern(w);
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(m);
  Point p = diagonal_point(m, Cx(0.35, 0.2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(jet_gram(kern, sub, k, p, p));
  }
}
BENCHMARK(BM_JetGram)->Args({3, 2})->Args({4, 3})->Args({5, 4});

static void BM_DecompositionTree(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  int n = static_cast<int>(state.range(1));
  std::vector<double> w(m, 1.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decomposition_tree(m, n, w));
  }
}
BENCHMARK(BM_DecompositionTree)->Args({3, 3})->Args({5, 4});
