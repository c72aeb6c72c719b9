#include "cshift/synthetic.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "cshift/errors.hpp"
#include "cshift/seeding.hpp"

namespace cshift {

namespace {

void softmax_inplace(std::span<double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (auto& z : logits) {
    z = std::exp(z - top);
    sum += z;
  }
  for (auto& z : logits) z /= sum;
}

}  // namespace

LabeledDataset synthetic_scores(std::size_t n, const SyntheticScoreConfig& config,
                                std::uint64_t seed) {
  if (n == 0 || config.classes < 2) {
    throw PreconditionError(fmt::format("synthetic scores need n >= 1 and L >= 2 (got {}, {})", n,
                                        config.classes));
  }
  const std::size_t classes = config.classes;
  const double inv_temperature = std::exp(-config.log_temperature);
  std::vector<double> values(n * classes);
  std::vector<std::size_t> labels(n);

  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto label = static_cast<std::size_t>(uniform_index(rng, classes));
    std::span<double> row(values.data() + i * classes, classes);
    for (std::size_t j = 0; j < classes; ++j) {
      const double z = config.noise * gauss(rng) + (j == label ? config.signal : 0.0);
      row[j] = z * inv_temperature;
    }
    softmax_inplace(row);
    labels[i] = label;
    if (config.calibrated) {
      const double draw = uniform01(rng);
      double cumulative = 0.0;
      labels[i] = classes - 1;
      for (std::size_t j = 0; j < classes; ++j) {
        cumulative += row[j];
        if (draw < cumulative) {
          labels[i] = j;
          break;
        }
      }
    }
  }
  return LabeledDataset(ScoreMatrix(std::move(values), n, classes), std::move(labels));
}

ScoreMatrix temperature_scale(const ScoreMatrix& scores, double log_temperature) {
  const double inv_temperature = std::exp(-log_temperature);
  const std::size_t classes = scores.classes();
  std::vector<double> values(scores.values());
  constexpr double kFloor = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    std::span<double> row(values.data() + i * classes, classes);
    for (auto& p : row) p = std::log(std::max(p, kFloor)) * inv_temperature;
    softmax_inplace(row);
  }
  return ScoreMatrix(std::move(values), scores.rows(), classes);
}

ScoreMatrix dirichlet_jitter(const ScoreMatrix& scores, double concentration, std::uint64_t seed) {
  if (!(concentration > 0.0)) return scores;
  const std::size_t classes = scores.classes();
  std::vector<double> values(scores.values());
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    std::span<double> row(values.data() + i * classes, classes);
    std::vector<double> draw(classes);
    double sum = 0.0;
    for (std::size_t j = 0; j < classes; ++j) {
      const double shape = concentration * row[j];
      if (shape > 0.0) {
        std::gamma_distribution<double> gamma(shape, 1.0);
        draw[j] = gamma(rng);
      }
      sum += draw[j];
    }
    // A draw can underflow to all zeros when every shape is tiny; keep the row.
    if (sum > 0.0 && std::isfinite(sum)) {
      for (std::size_t j = 0; j < classes; ++j) row[j] = draw[j] / sum;
    }
  }
  return ScoreMatrix(std::move(values), scores.rows(), classes);
}

}  // namespace cshift
