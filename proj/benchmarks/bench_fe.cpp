#include "modcert/fe.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace modcert;

void BM_MainEquationScan(benchmark::State& state) {
  const Alpha alpha(3.5);
  const CandidateFunction u = candidates::solution(alpha, 5);
  GridSpec grid;
  grid.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_grid(ResidualKind::Main, u, alpha, grid));
}
BENCHMARK(BM_MainEquationScan)->Arg(32)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_MainEquationScanExact(benchmark::State& state) {
  const CandidateFunction u = candidates::solution(Alpha(3.0), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_grid_exact(ResidualKind::Main, u, 3, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_MainEquationScanExact)->Arg(32)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_IntervalLemmas(benchmark::State& state) {
  const Alpha alpha(2.0);
  const CandidateFunction u = candidates::perturbed(candidates::solution(alpha), make_rational(1, 1000),
                                                    candidates::polynomial({0, 0, 1}, "x^2"));
  for (auto _ : state) benchmark::DoNotOptimize(interval_lemma_residuals(u, alpha));
}
BENCHMARK(BM_IntervalLemmas)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
