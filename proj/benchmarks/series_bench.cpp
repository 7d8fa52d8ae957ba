#include <benchmark/benchmark.h>

#include "k3mirror/arith.hpp"
#include "k3mirror/identities.hpp"
#include "k3mirror/periods.hpp"

namespace {

using namespace k3mirror;

void BM_LambdaQSeries(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(periods::lambda_q_series(n));
}
BENCHMARK(BM_LambdaQSeries)->Arg(10)->Arg(40)->Arg(80);

void BM_Revert(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto lam = periods::lambda_q_series(n);
  for (auto _ : state) benchmark::DoNotOptimize(qseries::revert(lam));
}
BENCHMARK(BM_Revert)->Arg(20)->Arg(40);

void BM_EtaProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qseries::eta_product(4, 6, n));
}
BENCHMARK(BM_EtaProduct)->Arg(100)->Arg(1000);

void BM_QuadraticTransformation(benchmark::State& state) {
  identities::IdentityOptions o;
  o.order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(identities::check_identity("QT1", o));
}
BENCHMARK(BM_QuadraticTransformation)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_ZetaTable(benchmark::State& state) {
  const long pmax = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(arith::zeta_table(2, pmax, 0));
}
BENCHMARK(BM_ZetaTable)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_FermatCount(benchmark::State& state) {
  const long p = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(arith::fermat_quartic_count(p));
}
BENCHMARK(BM_FermatCount)->Arg(41)->Arg(97);

}  // namespace
