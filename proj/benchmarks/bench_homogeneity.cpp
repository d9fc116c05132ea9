#include <benchmark/benchmark.h>

#include "jetlab/homogeneity.hpp"
#include "jetlab/jets.hpp"
#include "jetlab/rng.hpp"

using namespace jetlab;

static void BM_JetCocycleEval(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  int k = static_cast<int>(state.range(1));
  std::vector<double> w(m, 1.3);
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(m);
  MobiusMap phi(Cx(0.35, -0.2), 0.4);
  AutoTuple t;
  for (int j = 0; j < m; ++j) t.maps.push_back(phi);
  MatrixCocycle mc = jet_cocycle(t, w, sub, k);
  Point z = diagonal_point(m, Cx(0.2, 0.15));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc.eval(z));
  }
}
BENCHMARK(BM_JetCocycleEval)->Args({3, 2})->Args({4, 3});

static void BM_ScalarQuasiInvariance(benchmark::State& state) {
  std::vector<double> w = {1.3, 0.7, 2.1};
  ProductKernel k(w);
  ScalarKernelFn kernel = [&](const Point& z, const Point& ww) { return eval_kernel(k, z, ww); };
  Rng rng(9);
  AutoTuple t;
  for (int j = 0; j < 3; ++j) t.maps.push_back(MobiusMap(rng.disc(0.6), 0.3));
  ScalarCocycle j = scalar_cocycle(t, w);
  std::vector<std::pair<Point, Point>> pairs;
  for (int s = 0; s < 16; ++s) {
    pairs.emplace_back(Point({rng.disc(0.7), rng.disc(0.7), rng.disc(0.7)}),
                       Point({rng.disc(0.7), rng.disc(0.7), rng.disc(0.7)}));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        verify_quasi_invariance(kernel, t, [&](const Point& z) { return j.eval(z); }, pairs));
  }
}
BENCHMARK(BM_ScalarQuasiInvariance);
