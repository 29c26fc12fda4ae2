#include "modcert/entropy.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace modcert;

RealJoint uniform_joint(long side) {
  std::vector<JointCell<double>> cells;
  for (long r = 0; r < side; ++r) {
    for (long c = 0; c < side; ++c) cells.push_back({r, c, 1.0 / static_cast<double>(side * side)});
  }
  return RealJoint::from_cells(std::move(cells));
}

void BM_ChainRuleReal(benchmark::State& state) {
  const RealJoint j = uniform_joint(state.range(0));
  const Alpha alpha(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(chain_rule_residual(j, alpha, ChainOrder::XFirst));
}
BENCHMARK(BM_ChainRuleReal)->Arg(2)->Arg(6)->Arg(16);

void BM_ChainRuleExact(benchmark::State& state) {
  const long side = state.range(0);
  std::vector<JointCell<Rational>> cells;
  for (long r = 0; r < side; ++r) {
    for (long c = 0; c < side; ++c) cells.push_back({r, c, make_rational(1, side * side)});
  }
  const RationalJoint j = RationalJoint::from_cells(std::move(cells));
  for (auto _ : state) benchmark::DoNotOptimize(chain_rule_residual(j, 3U, ChainOrder::XFirst));
}
BENCHMARK(BM_ChainRuleExact)->Arg(2)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
