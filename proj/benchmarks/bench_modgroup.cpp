#include "modcert/modgroup.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace modcert;

GroupElement random_element(std::mt19937_64& rng, int length) {
  std::uniform_int_distribution<int> pick(0, 3);
  GeneratorWord w(Alphabet::ST);
  for (int i = 0; i < length; ++i) {
    const int k = pick(rng);
    w.push_back({k < 2 ? Generator::S : Generator::T, (k % 2) ? -1 : 1});
  }
  return w.evaluate();
}

void BM_DecomposeST(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const GroupElement g = random_element(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose_st(g));
}
BENCHMARK(BM_DecomposeST)->Arg(10)->Arg(40)->Arg(160);

void BM_DecomposeAndRewrite(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const GroupElement g = random_element(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rewrite_st_to_ab(decompose_st(g)));
}
BENCHMARK(BM_DecomposeAndRewrite)->Arg(10)->Arg(40)->Arg(160);

void BM_BezoutElement(benchmark::State& state) {
  const auto target = ProjectivePoint::from_coordinates(9973, 10007);
  for (auto _ : state) benchmark::DoNotOptimize(bezout_element(target));
}
BENCHMARK(BM_BezoutElement);

void BM_MatrixIdentities(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_matrix_identities());
}
BENCHMARK(BM_MatrixIdentities);

}  // namespace

BENCHMARK_MAIN();
