#include <benchmark/benchmark.h>

#include "bellscope/bell.hpp"
#include "bellscope/families.hpp"
#include "bellscope/linalg.hpp"
#include "bellscope/tightness.hpp"

using namespace bellscope;

static void BM_QuantumBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd u = linalg::random_orthogonal(n, 42);
  const BellMatrix bm(2.0 * u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum_bound(bm));
  }
}
BENCHMARK(BM_QuantumBound)->RangeMultiplier(2)->Range(4, 32);

static void BM_LocalBound(benchmark::State& state) {
  const auto fi = families::fishburn_reeds(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_bound(fi.matrix()));
  }
}
BENCHMARK(BM_LocalBound)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_SolveAlpha(benchmark::State& state) {
  const auto fi = families::random_dimension_witness(
      static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_alpha(fi.matrix()));
  }
}
BENCHMARK(BM_SolveAlpha)->RangeMultiplier(2)->Range(2, 16);

static void BM_Seesaw(benchmark::State& state) {
  const auto fi = families::chsh_power(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(seesaw_lower_bound(fi.matrix(), 8, 4, 200, 1));
  }
}
BENCHMARK(BM_Seesaw)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
