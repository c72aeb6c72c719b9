#include <gtest/gtest.h>

#include <cmath>

#include "cshift/errors.hpp"
#include "cshift/toymodel.hpp"
#include "toy_fixture.hpp"

namespace cshift::toy {
namespace {

using testing::kToyOracleBeta;
using testing::kToyOracleMc;
using testing::kToyOracleSeed;
using testing::kToyOracleTau;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Closed forms for w_sp > 0. A point is misclassified only when x_sp
// disagrees with y and |x_inv| < w_sp / w_inv; its wrong-class confidence is
// sigmoid(w_sp - w_inv |x_inv|), with |x_inv| ~ U[gamma, c].
double exact_error(const ModelParams& m, const Classifier& w) {
  return (1.0 - m.p) * (w.w_sp / w.w_inv - m.gamma) / (m.c - m.gamma);
}
double exact_tau(const ModelParams& m, const Classifier& w, double alpha) {
  const double edge = m.gamma + alpha * (m.c - m.gamma) / (1.0 - m.p);
  return sigmoid(w.w_sp - w.w_inv * edge);
}
double exact_beta(const ModelParams& source, const ModelParams& target, double alpha) {
  return alpha * (1.0 - source.p) / (1.0 - target.p);
}

const ModelParams kSource{0.05, 1.0, 0.9};
const ModelParams kTarget{0.05, 1.0, 0.7};
const Classifier kW{1.0, 0.5};

TEST(Sample, DegenerateAgreement) {
  for (const auto& s : sample({0.05, 1.0, 1.0}, 2000, 1)) ASSERT_EQ(s.x_sp, s.y);
  for (const auto& s : sample({0.05, 1.0, 0.0}, 2000, 1)) ASSERT_EQ(s.x_sp, -s.y);
}

TEST(Sample, AgreementRateAndLabelBalance) {
  const auto samples = sample(kSource, 100000, 2);
  double agree = 0.0;
  double positive = 0.0;
  for (const auto& s : samples) {
    agree += s.x_sp == s.y ? 1.0 : 0.0;
    positive += s.y > 0 ? 1.0 : 0.0;
  }
  EXPECT_NEAR(agree / 1e5, 0.9, 0.01);
  EXPECT_NEAR(positive / 1e5, 0.5, 0.01);
}

TEST(Sample, ConditionalSupport) {
  const ModelParams params{0.2, 1.5, 0.6};
  for (const auto& s : sample(params, 50000, 3)) {
    if (s.y > 0) {
      ASSERT_GE(s.x_inv, 0.2);
      ASSERT_LE(s.x_inv, 1.5);
    } else {
      ASSERT_GE(s.x_inv, -1.5);
      ASSERT_LE(s.x_inv, -0.2);
    }
    ASSERT_TRUE(s.x_sp == 1 || s.x_sp == -1);
  }
}

TEST(Sample, Deterministic) {
  const auto a = sample(kSource, 100, 4);
  const auto b = sample(kSource, 100, 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].x_inv, b[i].x_inv);
    ASSERT_EQ(a[i].y, b[i].y);
    ASSERT_EQ(a[i].x_sp, b[i].x_sp);
  }
}

TEST(Params, Validation) {
  EXPECT_THROW(sample({0.5, 0.5, 0.9}, 1, 1), PreconditionError);
  EXPECT_THROW(sample({-0.1, 1.0, 0.9}, 1, 1), PreconditionError);
  EXPECT_THROW(sample({0.0, 1.0, 1.1}, 1, 1), PreconditionError);
  EXPECT_THROW((Classifier{0.0, 0.5}.validate()), PreconditionError);
  EXPECT_THROW((Classifier{1.0, 0.0}.validate()), PreconditionError);
}

TEST(Classify, Examples) {
  const auto half = classify({1.0, 1.0}, 0.0, 0);
  EXPECT_DOUBLE_EQ(half[0], 0.5);
  EXPECT_DOUBLE_EQ(half[1], 0.5);
  const auto p = classify({1.0, 1.0}, 2.0, 1);
  EXPECT_NEAR(p[0], 1.0 / (1.0 + std::exp(3.0)), 1e-15);
  EXPECT_NEAR(p[0], 0.0474, 5e-5);
  EXPECT_NEAR(p[1], 0.9526, 5e-5);
}

TEST(Classify, SymmetryAndMonotonicity) {
  for (double x = -1.0; x <= 1.0; x += 0.01) {
    for (int sp : {-1, 1}) {
      const auto a = classify(kW, x, sp);
      const auto b = classify(kW, -x, -sp);
      ASSERT_NEAR(a[0], b[1], 1e-15);
      ASSERT_NEAR(a[1], b[0], 1e-15);
    }
    ASSERT_LT(classify(kW, x, 1)[1], classify(kW, x + 0.01, 1)[1]);
  }
}

TEST(ToDataset, LabelsAndArgmax) {
  const auto samples = sample(kTarget, 5000, 5);
  const auto d = to_dataset(samples, kW);
  ASSERT_EQ(d.size(), 5000u);
  ASSERT_EQ(d.classes(), 2u);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    ASSERT_EQ(d.labels()[i], samples[i].y > 0 ? 1u : 0u);
    const bool positive = kW.logit(samples[i].x_inv, samples[i].x_sp) > 0.0;
    ASSERT_EQ(d.scores()(i, 1) > d.scores()(i, 0), positive);
  }
  const auto single = to_dataset({Sample{0.0, 0, 1}}, kW);
  EXPECT_EQ(single.scores()(0, 0), 0.5);
}

TEST(Oracle, ErrorRateMatchesClosedForm) {
  EXPECT_NEAR(error_rate(kSource, kW, 1'000'000, 6), exact_error(kSource, kW), 1e-3);
  EXPECT_NEAR(error_rate(kTarget, kW, 1'000'000, 6), exact_error(kTarget, kW), 1.5e-3);
}

TEST(Oracle, FrozenFixtureReproduces) {
  TrialConfig config{kSource, kTarget, kW, 0.02, 0.1, 10000};
  const auto oracle = compute_oracle(config, kToyOracleMc, kToyOracleSeed);
  EXPECT_EQ(oracle.tau, kToyOracleTau);
  EXPECT_EQ(oracle.beta, kToyOracleBeta);
  EXPECT_EQ(oracle.error_source, testing::kToyErrorSource);
  EXPECT_EQ(oracle.error_target, testing::kToyErrorTarget);
}

TEST(Oracle, FrozenFixtureAgreesWithClosedForm) {
  EXPECT_NEAR(kToyOracleTau, exact_tau(kTarget, kW, 0.02), 1e-3);
  EXPECT_NEAR(kToyOracleBeta, exact_beta(kSource, kTarget, 0.02), 3.0 * std::sqrt(0.02 / 1e7) * 2);
}

TEST(Oracle, TauApproachesHalfAsAlphaApproachesError) {
  const double eps = exact_error(kTarget, kW);
  const double tau = oracle_tau(kTarget, kW, 0.99 * eps, 1'000'000, 7);
  EXPECT_GE(tau, 0.5);
  EXPECT_LT(tau, 0.51);
  EXPECT_THROW(oracle_tau(kTarget, kW, 1.01 * eps, 1'000'000, 7), PreconditionError);
}

TEST(Oracle, NearZeroSpuriousWeightMakesTauInsensitiveToTarget) {
  const Classifier w{1.0, 0.01};
  const double a = oracle_tau({0.0, 1.0, 0.6}, w, 5e-4, 1'000'000, 8);
  const double b = oracle_tau({0.0, 1.0, 0.8}, w, 5e-4, 1'000'000, 8);
  EXPECT_LT(std::abs(a - b), 0.005);
}

TEST(Oracle, BetaEqualsAlphaWithoutShift) {
  const std::size_t n_mc = 1'000'000;
  const double beta = oracle_beta(kSource, kSource, kW, 0.02, n_mc, 9);
  EXPECT_NEAR(beta, 0.02, 3.0 * std::sqrt(0.02 / static_cast<double>(n_mc)));
}

TEST(Oracle, LowerTargetAgreementShrinksBeta) {
  const double beta = oracle_beta(kSource, kTarget, kW, 0.02, 1'000'000, 10);
  EXPECT_LT(beta, 0.02);
  EXPECT_NEAR(beta, exact_beta(kSource, kTarget, 0.02), 5e-4);
}

TEST(Oracle, ComputeOracleChecksMargin) {
  TrialConfig config{kSource, kTarget, kW, 0.02, 0.1, 10000};
  const auto oracle = compute_oracle(config, 200000, 11);
  EXPECT_NEAR(oracle.error_source, exact_error(kSource, kW), 3e-3);
  config.alpha = 0.045;  // below eps_src = 0.0474 but above 0.9 * eps_src
  EXPECT_NO_THROW(compute_oracle(config, 200000, 11, 1.0));
  EXPECT_THROW(compute_oracle(config, 200000, 11, 0.9), PreconditionError);
}

TEST(Bound, SpuriousConstantBranches) {
  EXPECT_NEAR(spurious_constant(0.9, 0.7, 0.5), 0.3 * 0.01, 1e-15);
  EXPECT_NEAR(spurious_constant(0.9, 0.7, -0.5), 0.7 * 0.81, 1e-15);
  EXPECT_NEAR(theorem_bound(10000, 0.1, 0.003), std::sqrt(2.0 * std::log(160.0) / 30.0), 1e-12);
}

TEST(Trial, NoShiftStaysWithinBound) {
  TrialConfig config{kSource, kSource, kW, 0.02, 0.1, 10000};
  const auto oracle = compute_oracle(config, 1'000'000, 12);
  for (std::size_t t = 0; t < 5; ++t) {
    const auto report = run_theorem_trial(config, oracle, t, 13);
    EXPECT_LT(std::abs(report.beta_qtc - 0.02), report.bound);
    EXPECT_FALSE(report.violated);
    EXPECT_GT(report.achieved_target_coverage, 0.95);
  }
}

TEST(Trial, DeterministicAndCsv) {
  TrialConfig config{kSource, kTarget, kW, 0.02, 0.1, 1000};
  const Oracle oracle{kToyOracleTau, kToyOracleBeta, 0.0474, 0.1421, kToyOracleMc, kToyOracleSeed};
  const auto a = run_theorem_trial(config, oracle, 3, 14);
  const auto b = run_theorem_trial(config, oracle, 3, 14);
  EXPECT_EQ(trial_csv_row(config, a), trial_csv_row(config, b));
  EXPECT_EQ(a.beta_true, kToyOracleBeta);
  EXPECT_GT(a.bound, 0.0);
  EXPECT_EQ(trial_csv_header(),
            "trial_id,n,alpha,delta,p_src,p_tgt,w_inv,w_sp,beta_true,beta_qtc,bound,violated,"
            "coverage");
  EXPECT_EQ(trial_csv_row(config, a).rfind("3,1000,0.02,0.1,0.9,0.7,1,0.5,", 0), 0u);
  config.n = 50;
  EXPECT_THROW(run_theorem_trial(config, oracle, 0, 1), PreconditionError);
}

}  // namespace
}  // namespace cshift::toy
