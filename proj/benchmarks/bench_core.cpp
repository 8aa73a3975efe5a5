#include <benchmark/benchmark.h>

#include "asymbell/optimize.hpp"
#include "asymbell/simulate.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

asymbell::MeasurementSettings three_settings() {
  return asymbell::MeasurementSettings::planar({0.1, 0.9, -1.2}, {0.4, -0.3, 1.7});
}

void BM_CorrelationRep(benchmark::State& state) {
  const auto rho = asymbell::background_noise_state(0.5, 0.03);
  for (auto _ : state) benchmark::DoNotOptimize(asymbell::correlation_rep(rho));
}
BENCHMARK(BM_CorrelationRep);

void BM_ClickProbabilities(benchmark::State& state) {
  const auto rep = asymbell::correlation_rep(asymbell::pure_entangled_state(0.5));
  const auto s = three_settings();
  for (auto _ : state) benchmark::DoNotOptimize(asymbell::click_probabilities(rep, s));
}
BENCHMARK(BM_ClickProbabilities);

void BM_ScoreBreakdown(benchmark::State& state) {
  const auto table =
      asymbell::click_probabilities(asymbell::pure_entangled_state(0.5), three_settings());
  const auto poly = asymbell::i3322();
  const auto strat = asymbell::NoDetectionStrategy::all_zeros(3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(asymbell::score_breakdown(table, poly, strat));
}
BENCHMARK(BM_ScoreBreakdown);

void BM_LhvBound(benchmark::State& state) {
  const auto poly = asymbell::i3322();
  for (auto _ : state) benchmark::DoNotOptimize(asymbell::lhv_bound_bruteforce(poly));
}
BENCHMARK(BM_LhvBound);

void BM_ThresholdAsymSingleRestart(benchmark::State& state) {
  const auto rho = asymbell::pure_entangled_state(kPi / 4);
  const auto poly = asymbell::i3322();
  asymbell::OptimizerOptions opt;
  opt.restarts = 4;
  opt.threads = 1;
  opt.seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(asymbell::minimize_threshold_asym(rho, poly, opt));
}
BENCHMARK(BM_ThresholdAsymSingleRestart);

void BM_SimulateTrials(benchmark::State& state) {
  const auto rho = asymbell::pure_entangled_state(kPi / 4);
  const auto s = asymbell::MeasurementSettings::planar({0.0, kPi / 2}, {kPi / 4, -kPi / 4});
  const auto poly = asymbell::chsh();
  const auto strat = asymbell::NoDetectionStrategy::all_zeros(2, 2);
  asymbell::SimulationOptions so;
  so.trials = state.range(0);
  so.threads = 1;
  for (auto _ : state) {
    so.seed++;
    benchmark::DoNotOptimize(asymbell::simulate(rho, s, poly, strat, {1.0, 0.8}, so));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateTrials)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
