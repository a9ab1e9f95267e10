#include <benchmark/benchmark.h>

#include <random>

#include "leftce/diag_diff.hpp"
#include "leftce/diag_machine.hpp"
#include "leftce/kraft_chaitin.hpp"
#include "leftce/machines.hpp"
#include "leftce/omega_diff.hpp"
#include "leftce/opponents.hpp"
#include "leftce/semimeasures.hpp"

namespace {

using namespace leftce;

LeftCEStream staircase(Stage horizon, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Dyadic> values;
  Dyadic x;
  for (Stage s = 0; s <= horizon; ++s) {
    if (rng() % 3 == 0 && x < Dyadic::make(7, 3)) x += Dyadic::make(static_cast<long>(rng() % 255 + 1), 20);
    values.push_back(x);
  }
  return LeftCEStream(std::move(values));
}

MachineTape random_tape(std::size_t count, Stage last, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<DescriptionEvent> raw;
  for (std::size_t i = 0; i < count; ++i) {
    std::string p(rng() % 10 + 1, '0');
    for (char& c : p) c = rng() % 2 ? '1' : '0';
    std::string o(rng() % 4, '0');
    for (char& c : o) c = rng() % 2 ? '1' : '0';
    raw.push_back({static_cast<Stage>(i * static_cast<std::size_t>(last) / count), BitString(p), BitString(o)});
  }
  return enforce_prefix_free(raw);
}

void BM_RealToMachine(benchmark::State& state) {
  const LeftCEStream alpha = staircase(state.range(0), 7);
  for (auto _ : state) benchmark::DoNotOptimize(real_to_machine(alpha, state.range(0)));
}
BENCHMARK(BM_RealToMachine)->Arg(1000)->Arg(10000);

void BM_DiagCopying(benchmark::State& state) {
  const LeftCEStream beta = default_beta(state.range(0));
  for (auto _ : state) {
    CopyingOpponent opp;
    benchmark::DoNotOptimize(run_diag(opp, beta, state.range(0)));
  }
}
BENCHMARK(BM_DiagCopying)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_DiagVerify(benchmark::State& state) {
  const LeftCEStream beta = default_beta(state.range(0));
  CopyingOpponent opp;
  const DiagTrace t = run_diag(opp, beta, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_diag_claims(t));
}
BENCHMARK(BM_DiagVerify)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_DiffRun(benchmark::State& state) {
  const Stage h = state.range(0);
  const LeftCEStream beta = staircase(h, 11);
  std::vector<RightCEStream> thetas;
  for (int i = 0; i < 4; ++i) {
    thetas.emplace_back(std::vector<Dyadic>(static_cast<std::size_t>(h) + 1, Dyadic::make(9 + i, 4)));
  }
  const LeftCEStream boot(std::vector<Dyadic>{Dyadic::make(1, 1)});
  for (auto _ : state) benchmark::DoNotOptimize(run_diff(beta, thetas, boot, h));
}
BENCHMARK(BM_DiffRun)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_TransformV(benchmark::State& state) {
  const MachineTape u = random_tape(static_cast<std::size_t>(state.range(0)), 100, 3);
  const MachineTape q = random_tape(20, 100, 4);
  for (auto _ : state) benchmark::DoNotOptimize(transform_v(u, HSpec::offset(4), q, 100));
}
BENCHMARK(BM_TransformV)->Arg(50)->Arg(200);

void BM_SemimeasureSum(benchmark::State& state) {
  const Stage h = state.range(0);
  const LeftCEStream alpha = staircase(h, 5);
  SemiMeasureTape mu;
  for (Stage s = 1; s <= h; s += 97) mu.add(s, s % 17, Dyadic::pow2(-12));
  for (auto _ : state) benchmark::DoNotOptimize(uniform_semimeasure_with_sum(alpha, mu, 8, h));
}
BENCHMARK(BM_SemimeasureSum)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
