#pragma once

// Quantile Thresholded Confidence: recalibrating a conformal predictor for a
// shifted target distribution from unlabeled target scores.
//
// All estimators work on the top-confidence score max_l pi_l(x). A quantile
// q(D, c) is the ceil(c*|D|)-th smallest top confidence of D, and every
// "fraction below q" count uses the strict inequality s < q.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cshift/conformal.hpp"
#include "cshift/scores.hpp"

namespace cshift {

enum class QtcMethod { Qtc, QtcSc, QtcSt };

std::string to_string(QtcMethod method);
/// Accepts "qtc", "qtc-sc", "qtc-st" (underscores also accepted).
QtcMethod parse_qtc_method(const std::string& name);

struct QtcEstimate {
  QtcMethod method = QtcMethod::Qtc;
  /// The score quantile q; always a top confidence attained in its dataset.
  double q_threshold = 0.0;
  /// beta-hat for QTC / QTC-SC, tau-hat for QTC-ST. Always in [0, 1]; for
  /// RAPS the QTC-ST estimate lives on the mapped scale.
  double value = 0.0;
  /// Factor taking `value` back to the predictor's threshold scale (QTC-ST
  /// under RAPS: max_tau; otherwise 1).
  double scale = 1.0;
  double alpha = 0.0;
  std::vector<std::string> warnings;
};

double top_confidence(std::span<const double> row);
std::vector<double> top_confidences(const ScoreMatrix& scores);

/// q(D, c): ceil(c*n)-th smallest top confidence. c must lie in (0, 1]; when
/// c*n < 1 the first order statistic is used and a warning is appended.
double quantile_q(const ScoreMatrix& scores, double c, std::vector<std::string>* warnings = nullptr);

/// Fraction of rows whose top confidence is strictly below q.
double fraction_below(const ScoreMatrix& scores, double q);

/// beta = fraction of source rows below q(target, alpha).
QtcEstimate estimate_beta_qtc(const ScoreMatrix& source, const ScoreMatrix& target, double alpha);

/// beta = 1 - fraction of target rows below q(source, 1 - alpha).
QtcEstimate estimate_beta_qtc_sc(const ScoreMatrix& source, const ScoreMatrix& target,
                                 double alpha);

/// tau-hat = fraction of target rows below q(source, tau_source), where
/// tau_source is `source_threshold.tau` mapped into [0,1] (RAPS divides by
/// max_tau; `scale` records the factor). Throws SaturationError when the
/// source threshold is saturated.
QtcEstimate estimate_tau_qtc_st(const ScoreMatrix& source, const ScoreMatrix& target,
                                const PredictorSpec& spec, const Threshold& source_threshold);

/// Calibrates on `source` at alpha first, then applies the overload above.
QtcEstimate estimate_tau_qtc_st(const LabeledDataset& source, const ScoreMatrix& target,
                                const PredictorSpec& spec, double alpha, std::uint64_t seed);

struct Recalibration {
  Threshold threshold;
  QtcEstimate estimate;
};

/// QTC / QTC-SC: clamp beta-hat into [1/(n+1), 1 - 1/(n+1)] and calibrate on the
/// source at that level. QTC-ST: use tau-hat directly.
Recalibration recalibrate(const PredictorSpec& spec, const LabeledDataset& source,
                          const ScoreMatrix& target, double alpha, QtcMethod method,
                          std::uint64_t seed);

}  // namespace cshift
