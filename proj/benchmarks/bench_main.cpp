#include <benchmark/benchmark.h>

#include "oneharm/continuation.hpp"
#include "oneharm/gram.hpp"
#include "oneharm/jacobi.hpp"
#include "oneharm/linalg.hpp"
#include "oneharm/maps.hpp"
#include "oneharm/raney.hpp"

namespace {

using namespace oneharm;

void BM_RaneyTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(raney_table(3, 1, n));
}
BENCHMARK(BM_RaneyTable)->Arg(100)->Arg(1000);

void BM_WeightedBlock(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weighted_block(3, 0.999 * zeta_c(3), 1, 1.0, n));
}
BENCHMARK(BM_WeightedBlock)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_SymEig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto block = weighted_block(3, 0.99 * zeta_c(3), 1, 1.0, n).matrix;
  for (auto _ : state) benchmark::DoNotOptimize(sym_eig(block));
}
BENCHMARK(BM_SymEig)->Arg(30)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_Continue(benchmark::State& state) {
  const double u = 3.0 * zeta_c(2) * zeta_c(2);
  for (auto _ : state) benchmark::DoNotOptimize(gp_continue(2, 1, u, Side::above));
}
BENCHMARK(BM_Continue)->Unit(benchmark::kMillisecond);

void BM_JacobiCoefficients(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = moments(3, 1, 2 * n);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_coefficients(m, n));
}
BENCHMARK(BM_JacobiCoefficients)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
