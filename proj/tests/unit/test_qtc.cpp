#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cshift/errors.hpp"
#include "cshift/qtc.hpp"
#include "cshift/synthetic.hpp"
#include "test_support.hpp"

namespace cshift {
namespace {

/// Binary rows whose top confidence is the given value (each must be >= 0.5).
ScoreMatrix binary_rows(const std::vector<double>& tops) {
  std::vector<double> values;
  for (double t : tops) values.insert(values.end(), {t, 1.0 - t});
  return ScoreMatrix(values, tops.size(), 2);
}

/// Rows with top confidence t and the rest spread evenly; any t in
/// [1/classes, 1] is attainable.
ScoreMatrix rows_with_top(const std::vector<double>& tops, std::size_t classes = 10) {
  std::vector<double> values;
  for (double t : tops) {
    values.push_back(t);
    for (std::size_t j = 1; j < classes; ++j) {
      values.push_back((1.0 - t) / static_cast<double>(classes - 1));
    }
  }
  return ScoreMatrix(values, tops.size(), classes);
}

TEST(TopConfidence, Examples) {
  EXPECT_EQ(top_confidence(std::vector<double>{0.5, 0.3, 0.2}), 0.5);
  EXPECT_EQ(top_confidence(std::vector<double>{0.25, 0.25, 0.25, 0.25}), 0.25);
  EXPECT_EQ(top_confidence(std::vector<double>{0.0, 1.0}), 1.0);
}

TEST(QuantileQ, OrderStatisticConvention) {
  const auto d = rows_with_top({0.9, 0.1, 0.7, 0.3, 0.5});
  EXPECT_DOUBLE_EQ(quantile_q(d, 0.4), 0.3);
  EXPECT_DOUBLE_EQ(quantile_q(d, 1.0), 0.9);
  EXPECT_DOUBLE_EQ(quantile_q(d, 0.2), 0.1);
  EXPECT_DOUBLE_EQ(quantile_q(d, 0.41), 0.5);
}

TEST(QuantileQ, FloorsTinyLevelsWithWarning) {
  const auto d = rows_with_top({0.9, 0.1, 0.7, 0.3, 0.5});
  std::vector<std::string> warnings;
  EXPECT_DOUBLE_EQ(quantile_q(d, 0.05, &warnings), 0.1);
  EXPECT_EQ(warnings.size(), 1u);
  warnings.clear();
  quantile_q(d, 0.2, &warnings);
  EXPECT_TRUE(warnings.empty());
}

TEST(QuantileQ, RejectsLevelsOutsideRange) {
  const auto d = rows_with_top({0.5});
  EXPECT_THROW(quantile_q(d, 0.0), PreconditionError);
  EXPECT_THROW(quantile_q(d, 1.5), PreconditionError);
}

TEST(QuantileQ, AttainedAndMonotone) {
  std::mt19937_64 rng(1);
  const auto d = testing::random_scores(257, 10, rng);
  const auto tops = top_confidences(d);
  double previous = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double q = quantile_q(d, i / 100.0);
    EXPECT_NE(std::find(tops.begin(), tops.end(), q), tops.end());
    EXPECT_GE(q, previous);
    previous = q;
  }
}

TEST(EstimateBetaQtc, FractionStrictlyBelowTargetQuantile) {
  const auto source = rows_with_top({0.2, 0.25, 0.5, 0.8});
  // q(target, 0.5) = 2nd smallest of {0.1, 0.3, 0.9} = 0.3
  const auto target = rows_with_top({0.9, 0.3, 0.1});
  const auto est = estimate_beta_qtc(source, target, 0.5);
  EXPECT_DOUBLE_EQ(est.q_threshold, 0.3);
  EXPECT_DOUBLE_EQ(est.value, 0.5);
  EXPECT_EQ(est.method, QtcMethod::Qtc);
  EXPECT_EQ(est.alpha, 0.5);
}

TEST(EstimateBetaQtc, TiesAtQAreNotBelow) {
  const auto source = rows_with_top({0.3, 0.3, 0.5});
  const auto target = rows_with_top({0.3, 0.9});
  EXPECT_DOUBLE_EQ(estimate_beta_qtc(source, target, 0.5).value, 0.0);
}

TEST(EstimateBetaQtcSc, HandExample) {
  const auto source = rows_with_top({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}, 20);
  const auto target = rows_with_top({0.05, 0.5, 0.95, 0.99}, 20);
  const auto est = estimate_beta_qtc_sc(source, target, 0.2);
  EXPECT_DOUBLE_EQ(est.q_threshold, 0.8);
  EXPECT_DOUBLE_EQ(est.value, 0.5);
}

TEST(EstimateBetaQtcSc, TargetAboveSourceGivesOne) {
  const auto source = binary_rows({0.6, 0.7, 0.8});
  const auto target = binary_rows({0.8, 0.85, 0.99});
  EXPECT_EQ(estimate_beta_qtc_sc(source, target, 0.1).value, 1.0);
}

TEST(EstimateTauQtcSt, TpsHandExample) {
  const auto source = binary_rows({0.6, 0.7, 0.8, 0.9});
  const auto target = binary_rows({0.5, 0.85});
  const Threshold thr{0.75, 0.1, "calibrate", false};
  const auto est = estimate_tau_qtc_st(source, target, PredictorSpec::tps(), thr);
  EXPECT_DOUBLE_EQ(est.q_threshold, 0.8);
  EXPECT_DOUBLE_EQ(est.value, 0.5);
  EXPECT_EQ(est.scale, 1.0);
}

TEST(EstimateTauQtcSt, RapsRemapsThroughMaxTau) {
  const auto source = binary_rows({0.6, 0.7, 0.8, 0.9});
  const auto target = binary_rows({0.55, 0.65, 0.75});
  const auto raps = PredictorSpec::raps(1.0, 0);
  const Threshold thr{1.5, 0.1, "calibrate", false};
  const auto est = estimate_tau_qtc_st(source, target, raps, thr);
  EXPECT_DOUBLE_EQ(est.scale, 3.0);
  // level 0.5 -> 2nd smallest source top confidence
  EXPECT_DOUBLE_EQ(est.q_threshold, quantile_q(source, 0.5));
  EXPECT_DOUBLE_EQ(est.value, 2.0 / 3.0);
  EXPECT_GE(est.value, 0.0);
  EXPECT_LE(est.value, 1.0);
}

TEST(EstimateTauQtcSt, SaturatedSourceIsAnError) {
  const auto source = binary_rows({0.6, 0.7});
  const Threshold thr{1.0, 0.01, "calibrate:saturated", true};
  EXPECT_THROW(estimate_tau_qtc_st(source, source, PredictorSpec::tps(), thr), SaturationError);
}

TEST(Estimators, RejectClassMismatch) {
  std::mt19937_64 rng(2);
  const auto a = testing::random_scores(10, 3, rng);
  const auto b = testing::random_scores(10, 4, rng);
  EXPECT_THROW(estimate_beta_qtc(a, b, 0.1), PreconditionError);
  EXPECT_THROW(estimate_beta_qtc_sc(a, b, 0.1), PreconditionError);
}

TEST(Properties, SelfConsistency) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {10u, 97u, 1000u}) {
    const auto d = testing::random_labeled(n, 10, rng);
    for (double alpha : {0.01, 0.05, 0.1, 0.25, 0.5, 0.9}) {
      const double tol = 1.0 / static_cast<double>(n) + 1e-12;
      EXPECT_LE(std::abs(estimate_beta_qtc(d.scores(), d.scores(), alpha).value - alpha), tol);
      EXPECT_LE(std::abs(estimate_beta_qtc_sc(d.scores(), d.scores(), alpha).value - alpha), tol);
      const auto thr = calibrate(PredictorSpec::tps(), d, alpha, 1);
      if (!thr.saturated) {
        const auto st = estimate_tau_qtc_st(d, d.scores(), PredictorSpec::tps(), alpha, 1);
        EXPECT_LE(std::abs(st.value - thr.tau), tol);
      }
    }
  }
}

TEST(Properties, BetaMonotoneInAlpha) {
  std::mt19937_64 rng(4);
  const auto source = testing::random_scores(500, 10, rng);
  const auto target = temperature_scale(testing::random_scores(400, 10, rng), 0.4);
  double previous = -1.0;
  for (int i = 1; i < 100; ++i) {
    const double beta = estimate_beta_qtc(source, target, i / 100.0).value;
    EXPECT_GE(beta, previous);
    EXPECT_GE(beta, 0.0);
    EXPECT_LE(beta, 1.0);
    previous = beta;
  }
}

TEST(Properties, LabelBlindness) {
  std::mt19937_64 rng(5);
  const auto source = testing::random_labeled(300, 10, rng);
  auto labels = source.labels();
  std::shuffle(labels.begin(), labels.end(), rng);
  for (auto& y : labels) y = (y + 3) % 10;
  const LabeledDataset relabeled(source.scores(), labels);
  const auto target = testing::random_scores(200, 10, rng);
  for (const auto method : {QtcMethod::Qtc, QtcMethod::QtcSc}) {
    const auto a = recalibrate(PredictorSpec::tps(), source, target, 0.1, method, 1).estimate;
    const auto b = recalibrate(PredictorSpec::tps(), relabeled, target, 0.1, method, 1).estimate;
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.q_threshold, b.q_threshold);
  }
  // QTC-ST only sees labels through tau^P: same tau, same estimate
  const Threshold fixed{0.7, 0.1, "calibrate", false};
  EXPECT_EQ(estimate_tau_qtc_st(source.scores(), target, PredictorSpec::tps(), fixed).value,
            estimate_tau_qtc_st(relabeled.scores(), target, PredictorSpec::tps(), fixed).value);
}

TEST(Recalibrate, SelfTargetMatchesPlainCalibration) {
  std::mt19937_64 rng(6);
  const auto d = testing::random_labeled(400, 10, rng);
  for (const auto& spec : {PredictorSpec::tps(), PredictorSpec::aps()}) {
    auto scores = calibration_scores(spec, d, 9);
    std::sort(scores.begin(), scores.end());
    const double plain = calibrate(spec, d, 0.1, 9).tau;
    const auto pos = std::lower_bound(scores.begin(), scores.end(), plain) - scores.begin();
    for (const auto method : {QtcMethod::Qtc, QtcMethod::QtcSc}) {
      const double tau = recalibrate(spec, d, d.scores(), 0.1, method, 9).threshold.tau;
      const auto at = std::lower_bound(scores.begin(), scores.end(), tau) - scores.begin();
      EXPECT_LE(std::abs(at - pos), 1) << spec.name() << " " << to_string(method);
    }
  }
}

TEST(Recalibrate, ClampsBetaAndRecordsTargetAlpha) {
  // every source confidence is above every target confidence: beta-hat = 0
  const auto source = LabeledDataset(binary_rows({0.9, 0.95, 0.97, 0.99}), {0, 0, 1, 0});
  const auto target = binary_rows({0.5, 0.55, 0.6});
  const auto r = recalibrate(PredictorSpec::tps(), source, target, 0.1, QtcMethod::Qtc, 1);
  EXPECT_EQ(r.estimate.value, 0.0);
  EXPECT_FALSE(r.estimate.warnings.empty());
  // beta clamped to 1/5 -> rank ceil(0.8 * 5) = 4 = n, the largest score
  EXPECT_FALSE(r.threshold.saturated);
  EXPECT_EQ(r.threshold.alpha, 0.1);
  EXPECT_DOUBLE_EQ(r.threshold.tau, 0.97);
}

TEST(Recalibrate, QtcStUsesEstimateDirectly) {
  std::mt19937_64 rng(7);
  const auto source = testing::random_labeled(300, 10, rng);
  const auto target = testing::random_scores(100, 10, rng);
  const auto raps = PredictorSpec::raps(0.1, 2);
  const auto r = recalibrate(raps, source, target, 0.1, QtcMethod::QtcSt, 3);
  EXPECT_DOUBLE_EQ(r.threshold.tau, r.estimate.value * raps.max_tau(10));
  EXPECT_LE(r.threshold.tau, raps.max_tau(10));
  EXPECT_EQ(r.threshold.alpha, 0.1);
}

TEST(Methods, ParseAndPrint) {
  for (const auto m : {QtcMethod::Qtc, QtcMethod::QtcSc, QtcMethod::QtcSt}) {
    EXPECT_EQ(parse_qtc_method(to_string(m)), m);
  }
  EXPECT_EQ(parse_qtc_method("qtc_sc"), QtcMethod::QtcSc);
  EXPECT_THROW(parse_qtc_method("wsci"), ParseError);
}

}  // namespace
}  // namespace cshift
