#include <benchmark/benchmark.h>

#include "cshift/regression.hpp"
#include "cshift/synthetic.hpp"

namespace {

// One epoch of full-batch training on a 90-entry corpus.
void BM_TrainEpoch(benchmark::State& state) {
  cshift::SyntheticScoreConfig config;
  const auto source = cshift::synthetic_scores(2000, config, 1);
  const auto corpus = cshift::build_corpus(source, cshift::PredictorSpec::tps(), 0.1, 90,
                                           cshift::FeatureExtractor::ChrMinus, 10, 2);
  cshift::TrainingOptions options;
  options.epochs = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cshift::train(corpus, options));
  }
}
BENCHMARK(BM_TrainEpoch)->Unit(benchmark::kMillisecond);

void BM_BuildCorpus(benchmark::State& state) {
  cshift::SyntheticScoreConfig config;
  const auto source = cshift::synthetic_scores(2000, config, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cshift::build_corpus(source, cshift::PredictorSpec::aps(), 0.1, 10,
                                                  cshift::FeatureExtractor::Chr, 10, 2));
  }
}
BENCHMARK(BM_BuildCorpus)->Unit(benchmark::kMillisecond);

}  // namespace
