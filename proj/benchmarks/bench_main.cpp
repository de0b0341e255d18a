#include <benchmark/benchmark.h>

#include "vise/analytic.hpp"
#include "vise/experiments.hpp"
#include "vise/simulator.hpp"

namespace {

void BM_ExactIncrement(benchmark::State& state) {
  const vise::Environment env = vise::Environment::from_rho(-0.5, 10.0);
  const vise::VotingRule rule(state.range(0), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(vise::expected_increment_exact(env, rule).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactIncrement)->RangeMultiplier(10)->Range(21, 210'000)->Complexity();

void BM_ApproxIncrement(benchmark::State& state) {
  const vise::Environment env = vise::Environment::from_rho(-0.5, 10.0);
  const vise::VotingRule rule(21, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(vise::expected_increment_approx(env, rule).value);
}
BENCHMARK(BM_ApproxIncrement);

void BM_BruteforceThreshold(benchmark::State& state) {
  const vise::Environment env = vise::Environment::from_rho(0.3, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(vise::optimal_threshold_bruteforce(env, state.range(0)));
}
BENCHMARK(BM_BruteforceThreshold)->Arg(21)->Arg(201)->Arg(2001);

void BM_PitReport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vise::experiments::pit_report(21, 1.0, 0.5));
}
BENCHMARK(BM_PitReport)->Unit(benchmark::kMillisecond);

void BM_Simulation(benchmark::State& state) {
  vise::SimulationConfig cfg{.env = vise::Environment::from_rho(-0.5, 10.0),
                             .rule = vise::VotingRule(21, 0.5),
                             .steps = 1000,
                             .trials = 10,
                             .seed = 1,
                             .threads = static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(vise::run_simulation(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.steps * cfg.trials);
}
BENCHMARK(BM_Simulation)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
