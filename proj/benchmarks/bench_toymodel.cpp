#include <benchmark/benchmark.h>

#include "cshift/toymodel.hpp"

namespace {

void BM_OracleTau(benchmark::State& state) {
  const cshift::toy::ModelParams target{0.05, 1.0, 0.7};
  const cshift::toy::Classifier w{1.0, 0.5};
  const auto n_mc = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cshift::toy::oracle_tau(target, w, 0.02, n_mc, 1));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n_mc));
}
BENCHMARK(BM_OracleTau)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_TheoremTrial(benchmark::State& state) {
  cshift::toy::TrialConfig config;
  config.source = {0.05, 1.0, 0.9};
  config.target = {0.05, 1.0, 0.7};
  config.n = static_cast<std::size_t>(state.range(0));
  const cshift::toy::Oracle oracle{0.5955, 0.00667, 0.047, 0.142, 0, 0};
  std::size_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cshift::toy::run_theorem_trial(config, oracle, trial++, 2));
  }
}
BENCHMARK(BM_TheoremTrial)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

}  // namespace
