#pragma once

// Regression baselines: predict the calibrated threshold of a shifted
// distribution from summary features of its unlabeled scores, using an MLP
// fitted on synthetically perturbed copies of the source calibration set.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cshift/conformal.hpp"
#include "cshift/mlp.hpp"
#include "cshift/scores.hpp"

namespace cshift {

enum class FeatureExtractor {
  Acr,       ///< mean top confidence
  Dcr,       ///< mean top confidence minus the source's; target offset from source tau
  Chr,       ///< normalized top-confidence histogram, `bins` equal bins on [0,1]
  ChrMinus,  ///< Chr without its last bin
  Pcr,       ///< mean top confidence per predicted class
};

std::string to_string(FeatureExtractor extractor);
/// Accepts acr, dcr, chr, chr-minus (or chr_minus), pcr.
FeatureExtractor parse_extractor(const std::string& name);

std::size_t feature_dimension(FeatureExtractor extractor, std::size_t bins, std::size_t classes);

struct FeatureVector {
  FeatureExtractor extractor = FeatureExtractor::Acr;
  std::vector<double> values;
};

/// DCR requires `source_ref`; CHR variants require bins >= 2. A PCR class that
/// is never predicted gets the uninformative value 1/L and a warning.
FeatureVector extract_features(const ScoreMatrix& scores, FeatureExtractor extractor,
                               std::size_t bins, const ScoreMatrix* source_ref = nullptr,
                               std::vector<std::string>* warnings = nullptr);

struct ScoreShift {
  double log_temperature = 0.0;
  /// Dirichlet concentration; 0 means no jitter.
  double concentration = 0.0;
};

/// Applies temperature scaling, then Dirichlet jitter; labels are kept.
LabeledDataset apply_shift(const LabeledDataset& source, const ScoreShift& shift, std::uint64_t seed);

struct CorpusEntry {
  FeatureVector features;
  double target = 0.0;
  ScoreShift shift;
};

struct RegressionCorpus {
  FeatureExtractor extractor = FeatureExtractor::Acr;
  std::size_t bins = 10;
  std::size_t classes = 0;
  PredictorSpec spec = PredictorSpec::tps();
  double alpha = 0.1;
  /// tau calibrated on the unperturbed source; DCR targets are offsets from it.
  double source_tau = 0.0;
  std::vector<CorpusEntry> entries;
  std::vector<std::string> warnings;
};

/// n_shifts entries: entry 0 is the unperturbed source, the rest use
/// log-temperature ~ U[-1,1] and concentration ~ U[5,100]. Each perturbed set
/// is calibrated at alpha; saturated calibrations are dropped with a warning.
RegressionCorpus build_corpus(const LabeledDataset& source, const PredictorSpec& spec, double alpha,
                              std::size_t n_shifts, FeatureExtractor extractor, std::size_t bins,
                              std::uint64_t seed);

struct TrainingOptions {
  std::size_t epochs = 5000;
  double learning_rate = 1e-3;
  std::uint64_t seed = 0;
  std::size_t hidden_width = 64;
  std::size_t hidden_layers = 3;
};

/// Trained regressor plus everything needed to apply it to a new dataset.
struct MlpRegressor {
  Mlp network;
  std::vector<double> feature_mean;
  std::vector<double> feature_scale;
  FeatureExtractor extractor = FeatureExtractor::Acr;
  std::size_t bins = 10;
  std::size_t classes = 0;
  PredictorSpec spec = PredictorSpec::tps();
  double alpha = 0.1;
  double source_tau = 0.0;

  std::vector<double> standardize(std::span<const double> features) const;
  std::vector<double> unstandardize(std::span<const double> standardized) const;

  /// Text header (key=value lines, terminated by `end`) followed by the
  /// parameters as little-endian float64.
  void save(const std::filesystem::path& path) const;
  static MlpRegressor load(const std::filesystem::path& path);
};

struct TrainingResult {
  MlpRegressor model;
  double final_loss = 0.0;
  std::vector<double> loss_history;
};

/// Full-batch gradient descent on the mean squared error with standardized
/// features. Throws NumericError naming the epoch if the loss stops being finite.
TrainingResult train(const RegressionCorpus& corpus, const TrainingOptions& options);

/// Forward pass; adds `offset_base` back (DCR) and clamps to [0, max_tau].
double predict_tau(const MlpRegressor& model, const FeatureVector& features,
                   std::optional<double> offset_base = std::nullopt);

}  // namespace cshift
