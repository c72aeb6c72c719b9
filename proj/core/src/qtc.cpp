#include "cshift/qtc.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "cshift/errors.hpp"
#include "cshift/seeding.hpp"

namespace cshift {

namespace {

void require_compatible(const ScoreMatrix& source, const ScoreMatrix& target) {
  if (source.classes() != target.classes()) {
    throw PreconditionError(fmt::format("source has {} classes but target has {}",
                                        source.classes(), target.classes()));
  }
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw PreconditionError(fmt::format("alpha {} outside (0,1)", alpha));
  }
}

}  // namespace

std::string to_string(QtcMethod method) {
  switch (method) {
    case QtcMethod::Qtc: return "qtc";
    case QtcMethod::QtcSc: return "qtc-sc";
    case QtcMethod::QtcSt: return "qtc-st";
  }
  return "unknown";
}

QtcMethod parse_qtc_method(const std::string& name) {
  if (name == "qtc") return QtcMethod::Qtc;
  if (name == "qtc-sc" || name == "qtc_sc") return QtcMethod::QtcSc;
  if (name == "qtc-st" || name == "qtc_st") return QtcMethod::QtcSt;
  throw ParseError(fmt::format("unknown QTC method '{}'", name));
}

double top_confidence(std::span<const double> row) {
  return *std::max_element(row.begin(), row.end());
}

std::vector<double> top_confidences(const ScoreMatrix& scores) {
  std::vector<double> top(scores.rows());
  for (std::size_t i = 0; i < scores.rows(); ++i) top[i] = top_confidence(scores.row(i));
  return top;
}

double quantile_q(const ScoreMatrix& scores, double c, std::vector<std::string>* warnings) {
  if (!(c > 0.0 && c <= 1.0)) {
    throw PreconditionError(fmt::format("quantile level {} outside (0,1]", c));
  }
  const std::size_t n = scores.rows();
  std::size_t rank = robust_ceil(c * static_cast<double>(n));
  if (c * static_cast<double>(n) < 1.0) {
    rank = 1;
    if (warnings != nullptr) {
      warnings->push_back(fmt::format(
          "quantile level {} below 1/n for n={}; using the smallest score", c, n));
    }
  }
  rank = std::clamp<std::size_t>(rank, 1, n);
  auto top = top_confidences(scores);
  const auto kth = top.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(top.begin(), kth, top.end());
  return *kth;
}

double fraction_below(const ScoreMatrix& scores, double q) {
  std::size_t below = 0;
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    if (top_confidence(scores.row(i)) < q) ++below;
  }
  return static_cast<double>(below) / static_cast<double>(scores.rows());
}

QtcEstimate estimate_beta_qtc(const ScoreMatrix& source, const ScoreMatrix& target, double alpha) {
  require_compatible(source, target);
  require_alpha(alpha);
  QtcEstimate estimate;
  estimate.method = QtcMethod::Qtc;
  estimate.alpha = alpha;
  estimate.q_threshold = quantile_q(target, alpha, &estimate.warnings);
  estimate.value = fraction_below(source, estimate.q_threshold);
  return estimate;
}

QtcEstimate estimate_beta_qtc_sc(const ScoreMatrix& source, const ScoreMatrix& target,
                                 double alpha) {
  require_compatible(source, target);
  require_alpha(alpha);
  QtcEstimate estimate;
  estimate.method = QtcMethod::QtcSc;
  estimate.alpha = alpha;
  estimate.q_threshold = quantile_q(source, 1.0 - alpha, &estimate.warnings);
  estimate.value = 1.0 - fraction_below(target, estimate.q_threshold);
  return estimate;
}

QtcEstimate estimate_tau_qtc_st(const ScoreMatrix& source, const ScoreMatrix& target,
                                const PredictorSpec& spec, const Threshold& source_threshold) {
  require_compatible(source, target);
  if (source_threshold.saturated) {
    throw SaturationError(
        "QTC-ST is undefined for a saturated source threshold; use a larger calibration set or "
        "larger alpha");
  }
  QtcEstimate estimate;
  estimate.method = QtcMethod::QtcSt;
  estimate.alpha = source_threshold.alpha;
  estimate.scale = spec.kind() == PredictorKind::Raps ? spec.max_tau(source.classes()) : 1.0;

  double level = source_threshold.tau / estimate.scale;
  if (level > 1.0) level = 1.0;
  if (!(level > 0.0)) {
    estimate.warnings.push_back(
        fmt::format("source threshold {} maps to level 0; using the smallest score",
                    source_threshold.tau));
    level = 1.0 / static_cast<double>(source.rows());
  }
  estimate.q_threshold = quantile_q(source, level, &estimate.warnings);
  estimate.value = fraction_below(target, estimate.q_threshold);
  return estimate;
}

QtcEstimate estimate_tau_qtc_st(const LabeledDataset& source, const ScoreMatrix& target,
                                const PredictorSpec& spec, double alpha, std::uint64_t seed) {
  const auto source_threshold = calibrate(spec, source, alpha, seed);
  return estimate_tau_qtc_st(source.scores(), target, spec, source_threshold);
}

Recalibration recalibrate(const PredictorSpec& spec, const LabeledDataset& source,
                          const ScoreMatrix& target, double alpha, QtcMethod method,
                          std::uint64_t seed) {
  Recalibration result;
  if (method == QtcMethod::QtcSt) {
    result.estimate = estimate_tau_qtc_st(source, target, spec, alpha, seed);
    result.threshold.tau = result.estimate.value * result.estimate.scale;
    result.threshold.alpha = alpha;
    result.threshold.source_tag = to_string(method);
    return result;
  }

  result.estimate = method == QtcMethod::Qtc ? estimate_beta_qtc(source.scores(), target, alpha)
                                             : estimate_beta_qtc_sc(source.scores(), target, alpha);
  const double margin = 1.0 / static_cast<double>(source.size() + 1);
  const double beta = std::clamp(result.estimate.value, margin, 1.0 - margin);
  if (beta != result.estimate.value) {
    result.estimate.warnings.push_back(
        fmt::format("beta estimate {} clamped to {}", result.estimate.value, beta));
  }
  result.threshold = calibrate(spec, source, beta, seed);
  // Report the target level; the calibration level is beta.
  result.threshold.alpha = alpha;
  result.threshold.source_tag = to_string(method) + (result.threshold.saturated ? ":saturated" : "");
  return result;
}

}  // namespace cshift
