#include <benchmark/benchmark.h>

#include "cshift/qtc.hpp"
#include "cshift/synthetic.hpp"

namespace {

void BM_QuantileQ(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  cshift::SyntheticScoreConfig config;
  const auto data = cshift::synthetic_scores(n, config, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cshift::quantile_q(data.scores(), 0.1));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_QuantileQ)->Range(1 << 10, 1 << 17);

void BM_RecalibrateQtc(benchmark::State& state) {
  cshift::SyntheticScoreConfig config;
  const auto source = cshift::synthetic_scores(10000, config, 1);
  config.log_temperature = 0.5;
  const auto target = cshift::synthetic_scores(10000, config, 2);
  const auto method = static_cast<cshift::QtcMethod>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cshift::recalibrate(cshift::PredictorSpec::aps(), source,
                                                 target.scores(), 0.1, method, 3));
  }
  state.SetLabel(cshift::to_string(method));
}
BENCHMARK(BM_RecalibrateQtc)->DenseRange(0, 2);

}  // namespace
