#pragma once

// Synthetic classifier outputs and label-preserving score perturbations.
// These stand in for real model scores in tests, benchmarks and the
// regression baselines' training corpus.

#include <cstddef>
#include <cstdint>

#include "cshift/scores.hpp"

namespace cshift {

struct SyntheticScoreConfig {
  std::size_t classes = 10;
  /// Logit boost of the true class.
  double signal = 2.5;
  /// Standard deviation of the i.i.d. Gaussian logit noise.
  double noise = 1.0;
  /// Logits are divided by exp(log_temperature) before the softmax.
  double log_temperature = 0.0;
  /// Draw the label from the final scores instead of using the boosted class,
  /// making the scores calibrated at every temperature. A temperature change
  /// then shifts difficulty (accuracy and confidence move together).
  bool calibrated = false;
};

/// n labeled rows: k uniform, logits z_j = noise * N(0,1) + signal * [j == k],
/// scores = softmax(z / exp(log_temperature)); y = k, or y ~ Categorical(scores)
/// when `calibrated`. Scores are continuous, so conformity scores are distinct
/// almost surely.
LabeledDataset synthetic_scores(std::size_t n, const SyntheticScoreConfig& config,
                                std::uint64_t seed);

/// Temperature scaling of probability rows: softmax(log(pi) / exp(log_temperature)).
ScoreMatrix temperature_scale(const ScoreMatrix& scores, double log_temperature);

/// Replaces each row pi by a draw from Dirichlet(concentration * pi).
/// Labels are untouched. concentration <= 0 returns the scores unchanged.
ScoreMatrix dirichlet_jitter(const ScoreMatrix& scores, double concentration, std::uint64_t seed);

}  // namespace cshift
