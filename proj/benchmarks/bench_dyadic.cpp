#include <benchmark/benchmark.h>

#include "leftce/dyadic.hpp"
#include "leftce/kraft_chaitin.hpp"
#include "leftce/streams.hpp"

namespace {

using leftce::Dyadic;

void BM_DyadicAddWide(benchmark::State& state) {
  const auto bits = static_cast<std::int64_t>(state.range(0));
  const Dyadic a = Dyadic(1) - Dyadic::pow2(-bits);
  const Dyadic b = Dyadic::make(3, static_cast<std::uint64_t>(bits / 2));
  for (auto _ : state) benchmark::DoNotOptimize(a + b);
}
BENCHMARK(BM_DyadicAddWide)->Arg(64)->Arg(1024)->Arg(10000);

void BM_DyadicCompare(benchmark::State& state) {
  const auto bits = static_cast<std::int64_t>(state.range(0));
  const Dyadic a = Dyadic(1) - Dyadic::pow2(-bits);
  const Dyadic b = Dyadic(1) - Dyadic::pow2(1 - bits);
  for (auto _ : state) benchmark::DoNotOptimize(a < b);
}
BENCHMARK(BM_DyadicCompare)->Arg(64)->Arg(10000);

void BM_BinaryExpansion(benchmark::State& state) {
  const Dyadic x = leftce::default_beta(state.range(0)).final_value();
  for (auto _ : state) benchmark::DoNotOptimize(x.binary_expansion());
}
BENCHMARK(BM_BinaryExpansion)->Arg(100)->Arg(1000);

void BM_KraftChaitinGrants(benchmark::State& state) {
  for (auto _ : state) {
    leftce::KraftChaitinAllocator kc;
    for (std::int64_t n = 1; n <= state.range(0); ++n) benchmark::DoNotOptimize(kc.grant(Dyadic::pow2(-n)));
  }
}
BENCHMARK(BM_KraftChaitinGrants)->Arg(64)->Arg(512);

}  // namespace
