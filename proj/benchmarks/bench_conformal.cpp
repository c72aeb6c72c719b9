#include <benchmark/benchmark.h>

#include "cshift/conformal.hpp"
#include "cshift/synthetic.hpp"

namespace {

cshift::PredictorSpec spec_for(int kind) {
  switch (kind) {
    case 0: return cshift::PredictorSpec::tps();
    case 1: return cshift::PredictorSpec::aps();
    default: return cshift::PredictorSpec::raps(0.1, 2);
  }
}

void BM_Calibrate(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)));
  const auto n = static_cast<std::size_t>(state.range(1));
  cshift::SyntheticScoreConfig config;
  config.classes = 100;
  const auto data = cshift::synthetic_scores(n, config, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cshift::calibrate(spec, data, 0.1, 2));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
  state.SetLabel(spec.name());
}
BENCHMARK(BM_Calibrate)->ArgsProduct({{0, 1, 2}, {1000, 10000}});

void BM_Evaluate(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)));
  cshift::SyntheticScoreConfig config;
  config.classes = 100;
  const auto data = cshift::synthetic_scores(10000, config, 1);
  const auto thr = cshift::calibrate(spec, data, 0.1, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cshift::evaluate(spec, thr, data, 3));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 10000));
  state.SetLabel(spec.name());
}
BENCHMARK(BM_Evaluate)->DenseRange(0, 2);

}  // namespace
