#include "cshift/regression.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cshift/errors.hpp"
#include "cshift/kv_format.hpp"
#include "cshift/qtc.hpp"
#include "cshift/seeding.hpp"
#include "cshift/synthetic.hpp"

namespace cshift {

namespace {

double mean_top_confidence(const ScoreMatrix& scores) {
  double sum = 0.0;
  for (std::size_t i = 0; i < scores.rows(); ++i) sum += top_confidence(scores.row(i));
  return sum / static_cast<double>(scores.rows());
}

std::string join(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += fmt::format("{}", values[i]);
  }
  return out;
}

template <typename T>
std::vector<T> split_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    T value{};
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      throw ParseError(fmt::format("bad list entry '{}'", item));
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace

std::string to_string(FeatureExtractor extractor) {
  switch (extractor) {
    case FeatureExtractor::Acr: return "acr";
    case FeatureExtractor::Dcr: return "dcr";
    case FeatureExtractor::Chr: return "chr";
    case FeatureExtractor::ChrMinus: return "chr-minus";
    case FeatureExtractor::Pcr: return "pcr";
  }
  return "unknown";
}

FeatureExtractor parse_extractor(const std::string& name) {
  if (name == "acr") return FeatureExtractor::Acr;
  if (name == "dcr") return FeatureExtractor::Dcr;
  if (name == "chr") return FeatureExtractor::Chr;
  if (name == "chr-minus" || name == "chr_minus") return FeatureExtractor::ChrMinus;
  if (name == "pcr") return FeatureExtractor::Pcr;
  throw ParseError(fmt::format("unknown feature extractor '{}'", name));
}

std::size_t feature_dimension(FeatureExtractor extractor, std::size_t bins, std::size_t classes) {
  switch (extractor) {
    case FeatureExtractor::Acr:
    case FeatureExtractor::Dcr: return 1;
    case FeatureExtractor::Chr: return bins;
    case FeatureExtractor::ChrMinus: return bins - 1;
    case FeatureExtractor::Pcr: return classes;
  }
  return 0;
}

FeatureVector extract_features(const ScoreMatrix& scores, FeatureExtractor extractor,
                               std::size_t bins, const ScoreMatrix* source_ref,
                               std::vector<std::string>* warnings) {
  FeatureVector features;
  features.extractor = extractor;
  const std::size_t n = scores.rows();

  switch (extractor) {
    case FeatureExtractor::Acr:
      features.values = {mean_top_confidence(scores)};
      break;
    case FeatureExtractor::Dcr:
      if (source_ref == nullptr) throw PreconditionError("DCR features need a source reference");
      features.values = {mean_top_confidence(scores) - mean_top_confidence(*source_ref)};
      break;
    case FeatureExtractor::Chr:
    case FeatureExtractor::ChrMinus: {
      if (bins < 2) throw PreconditionError(fmt::format("histogram needs >= 2 bins, got {}", bins));
      // bin j covers [j/p, (j+1)/p); the last bin is closed at 1
      std::vector<std::size_t> counts(bins, 0);
      for (std::size_t i = 0; i < n; ++i) {
        const double s = top_confidence(scores.row(i));
        const auto j = static_cast<std::size_t>(std::floor(s * static_cast<double>(bins)));
        ++counts[std::min(j, bins - 1)];
      }
      const std::size_t dim = extractor == FeatureExtractor::Chr ? bins : bins - 1;
      features.values.resize(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        features.values[j] = static_cast<double>(counts[j]) / static_cast<double>(n);
      }
      break;
    }
    case FeatureExtractor::Pcr: {
      const std::size_t classes = scores.classes();
      std::vector<double> sums(classes, 0.0);
      std::vector<std::size_t> counts(classes, 0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto row = scores.row(i);
        const auto top = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
        sums[top] += row[top];
        ++counts[top];
      }
      features.values.resize(classes);
      for (std::size_t j = 0; j < classes; ++j) {
        if (counts[j] == 0) {
          features.values[j] = 1.0 / static_cast<double>(classes);
          if (warnings != nullptr) {
            warnings->push_back(fmt::format("class {} never predicted; PCR feature set to 1/L", j));
          }
        } else {
          features.values[j] = sums[j] / static_cast<double>(counts[j]);
        }
      }
      break;
    }
  }
  return features;
}

LabeledDataset apply_shift(const LabeledDataset& source, const ScoreShift& shift, std::uint64_t seed) {
  if (shift.log_temperature == 0.0 && shift.concentration <= 0.0) return source;
  auto scores = temperature_scale(source.scores(), shift.log_temperature);
  scores = dirichlet_jitter(scores, shift.concentration, derive_seed(seed, "jitter"));
  return LabeledDataset(std::move(scores), source.labels());
}

RegressionCorpus build_corpus(const LabeledDataset& source, const PredictorSpec& spec, double alpha,
                              std::size_t n_shifts, FeatureExtractor extractor, std::size_t bins,
                              std::uint64_t seed) {
  RegressionCorpus corpus;
  corpus.extractor = extractor;
  corpus.bins = bins;
  corpus.classes = source.classes();
  corpus.spec = spec;
  corpus.alpha = alpha;

  const std::uint64_t calibration_seed = derive_seed(seed, "calibrate");
  const auto source_threshold = calibrate(spec, source, alpha, calibration_seed);
  corpus.source_tau = source_threshold.tau;
  const bool offset_target = extractor == FeatureExtractor::Dcr;

  for (std::size_t j = 0; j < n_shifts; ++j) {
    const std::uint64_t shift_seed = derive_seed(seed, static_cast<std::uint64_t>(j));
    ScoreShift shift;
    if (j > 0) {
      Rng rng(derive_seed(shift_seed, "shift-params"));
      shift.log_temperature = -1.0 + 2.0 * uniform01(rng);
      shift.concentration = 5.0 + 95.0 * uniform01(rng);
    }
    const auto shifted = apply_shift(source, shift, shift_seed);
    const auto threshold = calibrate(spec, shifted, alpha, calibration_seed);
    if (threshold.saturated) {
      corpus.warnings.push_back(fmt::format("shift {} saturated during calibration; dropped", j));
      continue;
    }
    CorpusEntry entry;
    entry.shift = shift;
    entry.features = extract_features(shifted.scores(), extractor, bins, &source.scores(),
                                      &corpus.warnings);
    entry.target = offset_target ? threshold.tau - corpus.source_tau : threshold.tau;
    corpus.entries.push_back(std::move(entry));
  }
  return corpus;
}

std::vector<double> MlpRegressor::standardize(std::span<const double> features) const {
  std::vector<double> out(features.size());
  for (std::size_t k = 0; k < features.size(); ++k) {
    out[k] = (features[k] - feature_mean[k]) / feature_scale[k];
  }
  return out;
}

std::vector<double> MlpRegressor::unstandardize(std::span<const double> standardized) const {
  std::vector<double> out(standardized.size());
  for (std::size_t k = 0; k < standardized.size(); ++k) {
    out[k] = standardized[k] * feature_scale[k] + feature_mean[k];
  }
  return out;
}

TrainingResult train(const RegressionCorpus& corpus, const TrainingOptions& options) {
  if (corpus.entries.empty()) throw PreconditionError("empty corpus");
  const std::size_t dim = corpus.entries.front().features.values.size();
  const std::size_t count = corpus.entries.size();
  for (const auto& entry : corpus.entries) {
    if (entry.features.values.size() != dim || entry.features.extractor != corpus.extractor) {
      throw PreconditionError("corpus entries disagree in feature layout");
    }
  }

  TrainingResult result;
  MlpRegressor& model = result.model;
  model.extractor = corpus.extractor;
  model.bins = corpus.bins;
  model.classes = corpus.classes;
  model.spec = corpus.spec;
  model.alpha = corpus.alpha;
  model.source_tau = corpus.source_tau;

  // population statistics; constant coordinates keep scale 1
  model.feature_mean.assign(dim, 0.0);
  model.feature_scale.assign(dim, 0.0);
  for (const auto& entry : corpus.entries) {
    for (std::size_t k = 0; k < dim; ++k) model.feature_mean[k] += entry.features.values[k];
  }
  for (auto& m : model.feature_mean) m /= static_cast<double>(count);
  for (const auto& entry : corpus.entries) {
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = entry.features.values[k] - model.feature_mean[k];
      model.feature_scale[k] += d * d;
    }
  }
  for (auto& s : model.feature_scale) {
    s = std::sqrt(s / static_cast<double>(count));
    if (!(s > 1e-12)) s = 1.0;
  }

  std::vector<double> inputs;
  inputs.reserve(count * dim);
  std::vector<double> targets;
  targets.reserve(count);
  for (const auto& entry : corpus.entries) {
    const auto z = model.standardize(entry.features.values);
    inputs.insert(inputs.end(), z.begin(), z.end());
    targets.push_back(entry.target);
  }

  std::vector<std::size_t> layers{dim};
  for (std::size_t h = 0; h < options.hidden_layers; ++h) layers.push_back(options.hidden_width);
  layers.push_back(1);
  model.network = Mlp(layers, options.seed);

  std::vector<double> gradient;
  result.loss_history.reserve(options.epochs + 1);
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    const double loss = model.network.loss_and_gradient(inputs, targets, gradient);
    if (!std::isfinite(loss)) {
      throw NumericError(fmt::format("training loss became non-finite at epoch {}", epoch));
    }
    result.loss_history.push_back(loss);
    auto params = model.network.parameters();
    for (std::size_t k = 0; k < params.size(); ++k) params[k] -= options.learning_rate * gradient[k];
  }
  result.final_loss = model.network.loss(inputs, targets);
  if (!std::isfinite(result.final_loss)) {
    throw NumericError(fmt::format("training loss became non-finite at epoch {}", options.epochs));
  }
  result.loss_history.push_back(result.final_loss);
  return result;
}

double predict_tau(const MlpRegressor& model, const FeatureVector& features,
                   std::optional<double> offset_base) {
  if (features.values.size() != model.network.input_dimension()) {
    throw PreconditionError(fmt::format("feature dimension {} does not match model input {}",
                                        features.values.size(), model.network.input_dimension()));
  }
  double tau = model.network.forward(model.standardize(features.values));
  if (offset_base) tau += *offset_base;
  const double upper = model.spec.max_tau(std::max<std::size_t>(model.classes, 2));
  return std::clamp(tau, 0.0, upper);
}

void MlpRegressor::save(const std::filesystem::path& path) const {
  KvRecord header;
  header.set("format", std::string("cshift-mlp-1"));
  header.set("extractor", to_string(extractor));
  header.set("bins", bins);
  header.set("classes", classes);
  header.set("predictor", spec.name());
  if (spec.kind() == PredictorKind::Raps) {
    header.set("lambda", spec.lambda());
    header.set("kreg", spec.k_reg());
  }
  header.set("alpha", alpha);
  header.set("source_tau", source_tau);
  std::vector<std::size_t> sizes = network.layer_sizes();
  std::string layer_text;
  for (std::size_t i = 0; i < sizes.size(); ++i) layer_text += fmt::format("{}{}", i ? "," : "", sizes[i]);
  header.set("layers", layer_text);
  header.set("feature_mean", join(feature_mean));
  header.set("feature_scale", join(feature_scale));
  header.set("parameters", network.parameters().size());

  std::string out = format_records({header});
  out += "end\n";
  for (const double v : network.parameters()) {
    auto bytes = std::bit_cast<std::array<char, sizeof(double)>>(v);
    if constexpr (std::endian::native != std::endian::little) std::reverse(bytes.begin(), bytes.end());
    out.append(bytes.data(), bytes.size());
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ParseError(fmt::format("cannot write {}", path.string()));
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
}

MlpRegressor MlpRegressor::load(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError(fmt::format("cannot open {}", path.string()));
  std::string text;
  std::string line;
  bool terminated = false;
  while (std::getline(file, line)) {
    if (line == "end") {
      terminated = true;
      break;
    }
    text += line + '\n';
  }
  const auto records = parse_records(text);
  if (!terminated || records.size() != 1 || records[0].find("format") != "cshift-mlp-1") {
    throw ParseError(fmt::format("{}: not a cshift model file", path.string()));
  }
  const auto& header = records[0];

  MlpRegressor model;
  model.extractor = parse_extractor(header.get("extractor"));
  model.bins = header.get_size("bins");
  model.classes = header.get_size("classes");
  model.spec = predictor_from_record(header);
  model.alpha = header.get_double("alpha");
  model.source_tau = header.get_double("source_tau");
  model.feature_mean = split_list<double>(header.get("feature_mean"));
  model.feature_scale = split_list<double>(header.get("feature_scale"));
  model.network = Mlp(split_list<std::size_t>(header.get("layers")), 0);

  auto params = model.network.parameters();
  if (header.get_size("parameters") != params.size() ||
      model.feature_mean.size() != model.network.input_dimension() ||
      model.feature_scale.size() != model.network.input_dimension()) {
    throw ParseError(fmt::format("{}: inconsistent model header", path.string()));
  }
  for (auto& v : params) {
    std::array<char, sizeof(double)> bytes{};
    if (!file.read(bytes.data(), bytes.size())) {
      throw ParseError(fmt::format("{}: truncated weight blob", path.string()));
    }
    if constexpr (std::endian::native != std::endian::little) std::reverse(bytes.begin(), bytes.end());
    v = std::bit_cast<double>(bytes);
  }
  return model;
}

}  // namespace cshift
