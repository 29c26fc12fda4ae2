#include "modcert/certificate.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace modcert;

void BM_GenerateCertificate(benchmark::State& state) {
  const Rational r = make_rational(static_cast<long>(state.range(0)) - 1, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_certificate(r));
}
BENCHMARK(BM_GenerateCertificate)->Arg(7)->Arg(50)->Arg(1000);

void BM_VerifyCertificate(benchmark::State& state) {
  const Certificate c = generate_certificate(make_rational(37, 50));
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(c));
}
BENCHMARK(BM_VerifyCertificate);

void BM_BatchCertify(benchmark::State& state) {
  BatchOptions opts;
  opts.max_denominator = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(batch_certify(opts));
}
BENCHMARK(BM_BatchCertify)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
