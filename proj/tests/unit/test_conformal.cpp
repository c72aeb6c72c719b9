#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "cshift/conformal.hpp"
#include "cshift/errors.hpp"
#include "cshift/seeding.hpp"
#include "cshift/synthetic.hpp"
#include "test_support.hpp"

namespace cshift {
namespace {

using Set = std::vector<std::size_t>;

const std::array<double, 3> kRow{0.5, 0.3, 0.2};

TEST(ConformityScore, TpsIsOneMinusLabelScore) {
  const std::array<double, 2> row{0.9, 0.1};
  for (double u : {0.0, 0.4, 1.0}) {
    EXPECT_NEAR(conformity_score(PredictorSpec::tps(), row, 0, u), 0.1, 1e-15);
  }
}

TEST(ConformityScore, ApsPrefixSum) {
  EXPECT_DOUBLE_EQ(conformity_score(PredictorSpec::aps(), kRow, 1, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(conformity_score(PredictorSpec::aps(), kRow, 1, 1.0), 0.8);
  EXPECT_DOUBLE_EQ(conformity_score(PredictorSpec::aps(), kRow, 0, 0.5), 0.25);
}

TEST(ConformityScore, RapsPenalizedPrefix) {
  const auto raps = PredictorSpec::raps(0.1, 1);
  EXPECT_NEAR(conformity_score(raps, kRow, 2, 0.0), 0.9, 1e-15);
  // ranks within k_reg carry no penalty
  EXPECT_NEAR(conformity_score(raps, kRow, 0, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(conformity_score(raps, kRow, 1, 0.0), 0.5, 1e-15);
}

TEST(ConformityScore, TiesRankByAscendingIndex) {
  const std::array<double, 3> row{0.25, 0.5, 0.25};
  EXPECT_EQ(rank_classes(row), (Set{1, 0, 2}));
  EXPECT_DOUBLE_EQ(conformity_score(PredictorSpec::aps(), row, 0, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(conformity_score(PredictorSpec::aps(), row, 2, 0.0), 0.75);
}

TEST(ConformityScore, LabelOutOfRangeIsAnError) {
  EXPECT_THROW(conformity_score(PredictorSpec::aps(), kRow, 3, 0.0), PreconditionError);
}

TEST(PredictionSet, TpsFullSetAtOne) {
  const std::array<double, 2> row{0.9, 0.1};
  EXPECT_EQ(prediction_set(PredictorSpec::tps(), row, 0.0, 1.0), (Set{0, 1}));
  EXPECT_EQ(prediction_set(PredictorSpec::tps(), row, 0.0, 0.5), (Set{0}));
}

TEST(PredictionSet, ApsExamples) {
  EXPECT_EQ(prediction_set(PredictorSpec::aps(), kRow, 0.0, 0.6), (Set{0, 1}));
  EXPECT_EQ(prediction_set(PredictorSpec::aps(), kRow, 1.0, 0.6), (Set{0}));
  EXPECT_EQ(prediction_set(PredictorSpec::aps(), kRow, 0.7, 1.0), (Set{0, 1, 2}));
}

TEST(PredictorSpec, MaxTauAndNames) {
  EXPECT_EQ(PredictorSpec::tps().max_tau(10), 1.0);
  EXPECT_EQ(PredictorSpec::aps().max_tau(10), 1.0);
  EXPECT_DOUBLE_EQ(PredictorSpec::raps(0.1, 2).max_tau(10), 1.8);
  EXPECT_DOUBLE_EQ(PredictorSpec::raps(1.0, 0).max_tau(2), 3.0);
  EXPECT_DOUBLE_EQ(PredictorSpec::raps(1.0, 5).max_tau(2), 1.0);
  EXPECT_THROW(PredictorSpec::raps(-0.1, 1), PreconditionError);
  EXPECT_EQ(parse_predictor("raps", 0.2, 3), PredictorSpec::raps(0.2, 3));
  EXPECT_EQ(parse_predictor("aps").name(), "aps");
  EXPECT_THROW(parse_predictor("lac"), Error);
}

LabeledDataset tps_fixture(const std::vector<double>& true_scores) {
  std::vector<double> values;
  std::vector<std::size_t> labels;
  for (double p : true_scores) {
    values.insert(values.end(), {p, 1.0 - p});
    labels.push_back(0);
  }
  return LabeledDataset(ScoreMatrix(values, true_scores.size(), 2), labels);
}

TEST(Calibrate, TpsOrderStatistic) {
  const auto thr = calibrate(PredictorSpec::tps(), tps_fixture({0.9, 0.8, 0.6, 0.4}), 0.5, 0);
  EXPECT_NEAR(thr.tau, 0.4, 1e-15);
  EXPECT_FALSE(thr.saturated);
  EXPECT_EQ(thr.alpha, 0.5);
}

TEST(Calibrate, SaturatesWhenRankExceedsN) {
  const auto thr = calibrate(PredictorSpec::tps(), tps_fixture({0.7}), 0.4, 0);
  EXPECT_TRUE(thr.saturated);
  EXPECT_EQ(thr.tau, 1.0);
  EXPECT_NE(thr.source_tag.find("saturated"), std::string::npos);

  std::mt19937_64 rng(1);
  const auto d = testing::random_labeled(50, 10, rng);
  for (const auto& spec : {PredictorSpec::tps(), PredictorSpec::aps(), PredictorSpec::raps(0.1, 2)}) {
    const auto sat = calibrate(spec, d, 0.01, 3);
    EXPECT_TRUE(sat.saturated) << spec.name();
    EXPECT_DOUBLE_EQ(sat.tau, spec.max_tau(10));
  }
}

TEST(Calibrate, RejectsAlphaOutsideUnitInterval) {
  EXPECT_THROW(calibrate(PredictorSpec::tps(), tps_fixture({0.5}), 0.0, 0), PreconditionError);
  EXPECT_THROW(calibrate(PredictorSpec::tps(), tps_fixture({0.5}), 1.0, 0), PreconditionError);
}

TEST(Evaluate, SaturatedThresholdCoversEverything) {
  std::mt19937_64 rng(2);
  const auto d = testing::random_labeled(200, 6, rng);
  for (const auto& spec : {PredictorSpec::tps(), PredictorSpec::aps(), PredictorSpec::raps(0.1, 2)}) {
    Threshold thr{spec.max_tau(6), 0.1, "calibrate:saturated", true};
    const auto report = evaluate(spec, thr, d, 5);
    EXPECT_EQ(report.coverage, 1.0) << spec.name();
    EXPECT_EQ(report.avg_set_size, 6.0) << spec.name();
    EXPECT_EQ(report.size_histogram[6], 200u);
  }
}

TEST(Evaluate, ReportInvariants) {
  std::mt19937_64 rng(3);
  const auto d = testing::random_labeled(301, 5, rng);
  const auto spec = PredictorSpec::aps();
  const auto report = evaluate(spec, calibrate(spec, d, 0.2, 1), d, 2);
  ASSERT_EQ(report.size_histogram.size(), 6u);
  std::size_t total = 0;
  double weighted = 0.0;
  for (std::size_t k = 0; k < report.size_histogram.size(); ++k) {
    total += report.size_histogram[k];
    weighted += static_cast<double>(k * report.size_histogram[k]);
  }
  EXPECT_EQ(total, report.n_eval);
  EXPECT_EQ(report.n_eval, 301u);
  EXPECT_NEAR(report.avg_set_size, weighted / 301.0, 1e-12);
  EXPECT_EQ(evaluate(spec, calibrate(spec, d, 0.2, 1), d, 2).coverage, report.coverage);
}

TEST(Evaluate, CalibrationSetCoverageMatchesRank) {
  // distinct scores: re-evaluating on the calibration set with the same u's
  // covers exactly rank k = ceil((1-alpha)(n+1)) rows
  std::mt19937_64 rng(4);
  const std::size_t n = 999;
  const auto d = testing::random_labeled(n, 8, rng);
  for (const auto& spec : {PredictorSpec::tps(), PredictorSpec::aps(), PredictorSpec::raps(0.05, 2)}) {
    for (double alpha : {0.05, 0.1, 0.3}) {
      const auto thr = calibrate(spec, d, alpha, 17);
      const double k = static_cast<double>(robust_ceil((1 - alpha) * (n + 1)));
      const auto report = evaluate(spec, thr, d, 17);
      EXPECT_GE(report.coverage, k / n - 1.0 / n - 1e-12);
      EXPECT_LE(report.coverage, k / n + 1.0 / n + 1e-12);
    }
  }
}

TEST(Properties, NestingAndDualityOnRandomRows) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<PredictorSpec> specs{PredictorSpec::tps(), PredictorSpec::aps(),
                                         PredictorSpec::raps(0.1, 2), PredictorSpec::raps(0.5, 0)};
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t classes = 2 + trial % 9;
    const auto m = testing::random_scores(1, classes, rng);
    const auto row = m.row(0);
    const double u = unit(rng);
    for (const auto& spec : specs) {
      const double top = spec.max_tau(classes);
      double t1 = unit(rng) * top;
      double t2 = unit(rng) * top;
      if (t1 > t2) std::swap(t1, t2);
      const auto s1 = prediction_set(spec, row, u, t1);
      const auto s2 = prediction_set(spec, row, u, t2);
      ASSERT_TRUE(std::includes(s2.begin(), s2.end(), s1.begin(), s1.end()));
      for (std::size_t l = 0; l < classes; ++l) {
        const bool in = std::binary_search(s1.begin(), s1.end(), l);
        ASSERT_EQ(in, conformity_score(spec, row, l, u) <= t1);
      }
      // thresholds placed exactly on a score admit that label
      const double s = conformity_score(spec, row, trial % classes, u);
      const auto at = prediction_set(spec, row, u, s);
      ASSERT_TRUE(std::binary_search(at.begin(), at.end(), trial % classes));
      // the maximal threshold admits every label
      ASSERT_EQ(prediction_set(spec, row, u, top).size(), classes);
    }
  }
}

TEST(Properties, ApsAndTpsFullSetAtOne) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = testing::random_scores(1, 10, rng);
    EXPECT_EQ(prediction_set(PredictorSpec::aps(), m.row(0), 1.0, 1.0).size(), 10u);
    EXPECT_EQ(prediction_set(PredictorSpec::tps(), m.row(0), 0.0, 1.0).size(), 10u);
  }
}

TEST(Properties, ScoresStayInRange) {
  std::mt19937_64 rng(7);
  const auto raps = PredictorSpec::raps(0.3, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = testing::random_scores(1, 6, rng);
    for (double s : conformity_scores(raps, m.row(0), 1.0)) {
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, raps.max_tau(6));
    }
  }
}

TEST(Properties, CoverageSandwichSmallScale) {
  // mean coverage over exchangeable splits lies in [1-a, 1-a+1/(n+1)] up to
  // Monte Carlo slack; the full-size version is an acceptance criterion
  SyntheticScoreConfig config;
  const auto pool = synthetic_scores(1000, config, 8);
  const auto spec = PredictorSpec::aps();
  double mean = 0.0;
  const int splits = 100;
  for (int s = 0; s < splits; ++s) {
    const auto [cal, test] = split(pool, 0.5, static_cast<std::uint64_t>(s));
    mean += evaluate(spec, calibrate(spec, cal, 0.1, 100 + s), test, 200 + s).coverage;
  }
  mean /= splits;
  EXPECT_GE(mean, 0.9 - 0.01);
  EXPECT_LE(mean, 0.9 + 1.0 / 501 + 0.01);
}

}  // namespace
}  // namespace cshift
