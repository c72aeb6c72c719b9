#include "cshift/conformal.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

#include "cshift/errors.hpp"
#include "cshift/seeding.hpp"

namespace cshift {

PredictorSpec PredictorSpec::raps(double lambda, std::size_t k_reg) {
  if (!(lambda >= 0.0)) throw PreconditionError(fmt::format("RAPS lambda {} must be >= 0", lambda));
  return PredictorSpec(PredictorKind::Raps, lambda, k_reg);
}

double PredictorSpec::max_tau(std::size_t classes) const noexcept {
  if (kind_ != PredictorKind::Raps) return 1.0;
  const std::size_t penalized = classes > k_reg_ ? classes - k_reg_ : 0;
  return 1.0 + lambda_ * static_cast<double>(penalized);
}

std::string PredictorSpec::name() const {
  switch (kind_) {
    case PredictorKind::Tps: return "tps";
    case PredictorKind::Aps: return "aps";
    case PredictorKind::Raps: return "raps";
  }
  return "unknown";
}

PredictorSpec parse_predictor(const std::string& name, double lambda, std::size_t k_reg) {
  if (name == "tps") return PredictorSpec::tps();
  if (name == "aps") return PredictorSpec::aps();
  if (name == "raps") return PredictorSpec::raps(lambda, k_reg);
  throw ParseError(fmt::format("unknown predictor '{}' (expected tps, aps or raps)", name));
}

std::vector<std::size_t> rank_classes(std::span<const double> row) {
  std::vector<std::size_t> order(row.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return row[a] > row[b]; });
  return order;
}

std::vector<double> conformity_scores(const PredictorSpec& spec, std::span<const double> row,
                                      double u) {
  const std::size_t classes = row.size();
  const double upper = spec.max_tau(classes);
  std::vector<double> scores(classes);

  if (spec.kind() == PredictorKind::Tps) {
    for (std::size_t l = 0; l < classes; ++l) scores[l] = std::clamp(1.0 - row[l], 0.0, upper);
    return scores;
  }

  // Randomized cumulative mass along the ranking; RAPS adds lambda for every
  // ranked position j (1-based) with j > k_reg that precedes the label.
  const bool regularized = spec.kind() == PredictorKind::Raps;
  const auto order = rank_classes(row);
  double prefix = 0.0;
  for (std::size_t r = 0; r < classes; ++r) {
    const double p = row[order[r]];
    scores[order[r]] = std::clamp(prefix + u * p, 0.0, upper);
    prefix += p;
    if (regularized && r + 1 > spec.k_reg()) prefix += spec.lambda();
  }
  return scores;
}

double conformity_score(const PredictorSpec& spec, std::span<const double> row, std::size_t label,
                        double u) {
  if (label >= row.size()) {
    throw PreconditionError(fmt::format("label {} out of range for {} classes", label, row.size()));
  }
  return conformity_scores(spec, row, u)[label];
}

std::vector<std::size_t> prediction_set(const PredictorSpec& spec, std::span<const double> row,
                                        double u, double tau) {
  const auto scores = conformity_scores(spec, row, u);
  std::vector<std::size_t> members;
  for (std::size_t l = 0; l < scores.size(); ++l) {
    if (scores[l] <= tau) members.push_back(l);
  }
  return members;
}

std::vector<double> calibration_scores(const PredictorSpec& spec, const LabeledDataset& cal,
                                       std::uint64_t seed) {
  std::vector<double> scores(cal.size());
  for (std::size_t i = 0; i < cal.size(); ++i) {
    const double u = spec.randomized() ? row_uniform(seed, i) : 0.0;
    scores[i] = conformity_score(spec, cal.scores().row(i), cal.labels()[i], u);
  }
  return scores;
}

Threshold calibrate(const PredictorSpec& spec, const LabeledDataset& cal, double alpha,
                    std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw PreconditionError(fmt::format("alpha {} outside (0,1)", alpha));
  }
  const std::size_t n = cal.size();
  const std::size_t rank = robust_ceil((1.0 - alpha) * static_cast<double>(n + 1));

  Threshold threshold;
  threshold.alpha = alpha;
  threshold.source_tag = "calibrate";
  if (rank > n) {
    threshold.tau = spec.max_tau(cal.classes());
    threshold.saturated = true;
    threshold.source_tag += ":saturated";
    return threshold;
  }

  auto scores = calibration_scores(spec, cal, seed);
  const auto kth = scores.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(scores.begin(), kth, scores.end());
  threshold.tau = *kth;
  return threshold;
}

CoverageReport evaluate(const PredictorSpec& spec, const Threshold& threshold,
                        const LabeledDataset& test, std::uint64_t seed) {
  const std::size_t n = test.size();
  const std::size_t classes = test.classes();

  CoverageReport report;
  report.n_eval = n;
  report.size_histogram.assign(classes + 1, 0);

  std::size_t covered = 0;
  std::vector<std::size_t> sizes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = spec.randomized() ? row_uniform(seed, i) : 0.0;
    const auto scores = conformity_scores(spec, test.scores().row(i), u);
    std::size_t size = 0;
    for (const double s : scores) size += s <= threshold.tau ? 1 : 0;
    if (scores[test.labels()[i]] <= threshold.tau) ++covered;
    sizes[i] = size;
    ++report.size_histogram[size];
  }

  std::size_t total = 0;
  for (std::size_t k = 0; k <= classes; ++k) total += k * report.size_histogram[k];
  report.coverage = static_cast<double>(covered) / static_cast<double>(n);
  report.avg_set_size = static_cast<double>(total) / static_cast<double>(n);

  std::sort(sizes.begin(), sizes.end());
  report.median_set_size = n % 2 == 1
                               ? static_cast<double>(sizes[n / 2])
                               : 0.5 * static_cast<double>(sizes[n / 2 - 1] + sizes[n / 2]);
  return report;
}

}  // namespace cshift
