#include <benchmark/benchmark.h>

#include "cyclew/asymptotics.hpp"
#include "cyclew/exact_oracle.hpp"
#include "cyclew/htable.hpp"
#include "cyclew/sampler.hpp"

namespace {

using namespace cyclew;

void BM_BuildHTable(benchmark::State& state) {
  const auto w = WeightSequence::polynomial(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_h_table(w, state.range(0)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildHTable)->RangeMultiplier(2)->Range(1 << 10, 1 << 14)->Complexity(benchmark::oNSquared);

void BM_SampleCycleType(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const HTable table = build_h_table(WeightSequence::polynomial(1.0), n);
  const CycleTypeSampler sampler(table);
  Philox4x32 rng(substream_key(1, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.sample(n, rng));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SampleCycleType)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Complexity(benchmark::oN);

void BM_SampleBatch(benchmark::State& state) {
  const HTable table = build_h_table(WeightSequence::polynomial(1.0), 20000);
  SamplerConfig cfg{.n = 20000, .num_samples = 256, .seed = 3, .workers = static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_batch(table, cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.num_samples);
}
BENCHMARK(BM_SampleBatch)->Arg(1)->Arg(4)->UseRealTime();

void BM_SolveSaddle(benchmark::State& state) {
  const auto w = WeightSequence::polynomial(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_saddle(w, state.range(0)));
  }
}
BENCHMARK(BM_SolveSaddle)->Arg(1000)->Arg(100000)->Arg(10000000);

void BM_EnumerateCycleTypes(benchmark::State& state) {
  const auto w = WeightSequence::polynomial(1.0);
  for (auto _ : state) {
    double total = 0.0;
    for_each_cycle_type(w, state.range(0), [&](const CycleType&, double p) { total += p; });
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_EnumerateCycleTypes)->Arg(20)->Arg(40);

}  // namespace
BENCHMARK_MAIN();
