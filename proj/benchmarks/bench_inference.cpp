#include <benchmark/benchmark.h>

#include "fuzzprob/fuzzprob.hpp"

namespace {

using namespace fuzzprob;

const BenchInstance& reference_instance() {
  static const BenchInstance inst = materialize(InstanceSource::reference());
  return inst;
}

void BM_ComposeMaxMin(benchmark::State& state) {
  const auto inst = materialize(InstanceSource::random(state.range(0), state.range(0), 1));
  for (auto _ : state) benchmark::DoNotOptimize(compose(inst.input, inst.relation));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ComposeMaxMin)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNSquared);

void BM_MarginalExact(benchmark::State& state) {
  const auto& inst = reference_instance();
  const auto px = normalize_to_distribution(inst.input);
  const auto cond = conditional_from_relation(inst.relation);
  for (auto _ : state) benchmark::DoNotOptimize(marginal_exact(px, cond));
}
BENCHMARK(BM_MarginalExact);

// Throughput of the gate-level realization: slots are the samples it pays for.
void BM_StochasticCompose(benchmark::State& state) {
  const auto& inst = reference_instance();
  const StreamConfig cfg{static_cast<std::size_t>(state.range(0)), 0, Correlation::SharedDraw};
  for (auto _ : state) benchmark::DoNotOptimize(stochastic_compose(inst.input, inst.relation, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StochasticCompose)->RangeMultiplier(4)->Range(256, 65536);

void BM_McMarginal(benchmark::State& state) {
  const auto& inst = reference_instance();
  const auto px = normalize_to_distribution(inst.input);
  const auto cond = conditional_from_relation(inst.relation);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_marginal(px, cond, static_cast<std::size_t>(state.range(0)), seed++));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McMarginal)->RangeMultiplier(4)->Range(256, 65536);

void BM_Encode(benchmark::State& state) {
  const StreamConfig cfg{static_cast<std::size_t>(state.range(0)), 3, Correlation::Independent};
  for (auto _ : state) benchmark::DoNotOptimize(encode(0.37, cfg, 5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Encode)->Arg(1024)->Arg(16384);

void BM_ClosedLoopExact(benchmark::State& state) {
  const auto rb = reference_rulebase();
  const auto plant = reference_plant();
  for (auto _ : state) benchmark::DoNotOptimize(closed_loop_run(rb, plant, ExactFuzzy{}, 0));
}
BENCHMARK(BM_ClosedLoopExact);

void BM_ClosedLoopStochastic(benchmark::State& state) {
  const auto rb = reference_rulebase();
  const auto plant = reference_plant();
  const Backend backend = Stochastic{{static_cast<std::size_t>(state.range(0)), 0, Correlation::SharedDraw}};
  for (auto _ : state) benchmark::DoNotOptimize(closed_loop_run(rb, plant, backend, 0));
}
BENCHMARK(BM_ClosedLoopStochastic)->Arg(256)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
