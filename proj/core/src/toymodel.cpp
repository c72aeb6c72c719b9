#include "cshift/toymodel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "cshift/conformal.hpp"
#include "cshift/errors.hpp"
#include "cshift/qtc.hpp"
#include "cshift/seeding.hpp"

namespace cshift::toy {

namespace {

Sample draw(const ModelParams& params, Rng& rng) {
  Sample s;
  s.y = (rng() >> 63) != 0 ? 1 : -1;
  const double magnitude = params.gamma + (params.c - params.gamma) * uniform01(rng);
  s.x_inv = s.y * magnitude;
  s.x_sp = uniform01(rng) < params.p ? s.y : -s.y;
  return s;
}

// Streams n_mc samples, calling visit(misclassified, top_confidence).
void monte_carlo(const ModelParams& params, const Classifier& w, std::size_t n_mc,
                 std::uint64_t seed, const std::function<void(bool, double)>& visit) {
  Rng rng(seed);
  for (std::size_t i = 0; i < n_mc; ++i) {
    const auto s = draw(params, rng);
    const auto probs = classify(w, s);
    // ties go to index 0 (y = -1), matching rank_classes()
    const int predicted = probs[1] > probs[0] ? 1 : -1;
    visit(predicted != s.y, std::max(probs[0], probs[1]));
  }
}

void require_mc(std::size_t n_mc) {
  if (n_mc == 0) throw PreconditionError("Monte Carlo sample count must be positive");
}

}  // namespace

void ModelParams::validate() const {
  if (!(gamma >= 0.0 && c > gamma)) {
    throw PreconditionError(fmt::format("toy model needs c > gamma >= 0 (gamma={}, c={})", gamma, c));
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw PreconditionError(fmt::format("spurious agreement p={} outside [0,1]", p));
  }
}

void Classifier::validate() const {
  if (!(w_inv > 0.0)) throw PreconditionError(fmt::format("w_inv={} must be positive", w_inv));
  if (w_sp == 0.0 || !std::isfinite(w_sp)) {
    throw PreconditionError("w_sp must be finite and nonzero");
  }
}

std::vector<Sample> sample(const ModelParams& params, std::size_t n, std::uint64_t seed) {
  params.validate();
  if (n == 0) throw PreconditionError("sample count must be positive");
  Rng rng(derive_seed(seed, "toy-sample"));
  std::vector<Sample> samples(n);
  for (auto& s : samples) s = draw(params, rng);
  return samples;
}

std::array<double, 2> classify(const Classifier& w, double x_inv, int x_sp) {
  const double z = w.logit(x_inv, x_sp);
  return {1.0 / (1.0 + std::exp(z)), 1.0 / (1.0 + std::exp(-z))};
}

std::array<double, 2> classify(const Classifier& w, const Sample& s) {
  return classify(w, s.x_inv, s.x_sp);
}

LabeledDataset to_dataset(const std::vector<Sample>& samples, const Classifier& w) {
  std::vector<double> values;
  values.reserve(samples.size() * 2);
  std::vector<std::size_t> labels;
  labels.reserve(samples.size());
  for (const auto& s : samples) {
    const auto probs = classify(w, s);
    values.push_back(probs[0]);
    values.push_back(probs[1]);
    labels.push_back(s.y > 0 ? 1 : 0);
  }
  return LabeledDataset(ScoreMatrix(std::move(values), samples.size(), 2), std::move(labels));
}

double error_rate(const ModelParams& params, const Classifier& w, std::size_t n_mc,
                  std::uint64_t seed) {
  params.validate();
  require_mc(n_mc);
  std::size_t errors = 0;
  monte_carlo(params, w, n_mc, derive_seed(seed, "error-rate"),
              [&](bool wrong, double) { errors += wrong ? 1 : 0; });
  return static_cast<double>(errors) / static_cast<double>(n_mc);
}

double oracle_tau(const ModelParams& target, const Classifier& w, double alpha, std::size_t n_mc,
                  std::uint64_t seed) {
  target.validate();
  require_mc(n_mc);
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError(fmt::format("alpha {} outside (0,1)", alpha));

  std::vector<double> wrong_confidence;
  monte_carlo(target, w, n_mc, derive_seed(seed, "oracle-target"), [&](bool wrong, double conf) {
    if (wrong) wrong_confidence.push_back(conf);
  });

  const std::size_t rank = std::max<std::size_t>(1, robust_ceil(alpha * static_cast<double>(n_mc)));
  if (rank >= wrong_confidence.size()) {
    throw PreconditionError(fmt::format(
        "alpha {} is not below the target error rate {}", alpha,
        static_cast<double>(wrong_confidence.size()) / static_cast<double>(n_mc)));
  }
  // rank-th largest confidence among misclassified points
  const auto kth = wrong_confidence.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(wrong_confidence.begin(), kth, wrong_confidence.end(), std::greater<>{});
  return *kth;
}

double oracle_beta(const ModelParams& source, const ModelParams& target, const Classifier& w,
                   double alpha, std::size_t n_mc, std::uint64_t seed) {
  source.validate();
  const double tau = oracle_tau(target, w, alpha, n_mc, seed);
  std::size_t missed = 0;
  monte_carlo(source, w, n_mc, derive_seed(seed, "oracle-source"), [&](bool wrong, double conf) {
    if (wrong && conf >= tau) ++missed;
  });
  return static_cast<double>(missed) / static_cast<double>(n_mc);
}

double spurious_constant(double p_source, double p_target, double w_sp) {
  if (w_sp > 0.0) return (1.0 - p_target) * (1.0 - p_source) * (1.0 - p_source);
  return p_target * p_source * p_source;
}

double theorem_bound(std::size_t n, double delta, double c_sp) {
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError(fmt::format("delta {} outside (0,1)", delta));
  if (!(c_sp > 0.0)) {
    throw PreconditionError("c_sp must be positive; p on the relevant side is degenerate");
  }
  return std::sqrt(2.0 * std::log(16.0 / delta) / (static_cast<double>(n) * c_sp));
}

Oracle compute_oracle(const TrialConfig& config, std::size_t n_mc, std::uint64_t seed,
                      double margin) {
  config.source.validate();
  config.target.validate();
  config.w.validate();

  Oracle oracle;
  oracle.n_mc = n_mc;
  oracle.seed = seed;
  oracle.error_source = error_rate(config.source, config.w, n_mc, derive_seed(seed, "source"));
  oracle.error_target = error_rate(config.target, config.w, n_mc, derive_seed(seed, "target"));
  const double limit = margin * std::min(oracle.error_source, oracle.error_target);
  if (!(config.alpha < limit)) {
    throw PreconditionError(fmt::format(
        "alpha {} must be below {} x error rate (source {}, target {})", config.alpha, margin,
        oracle.error_source, oracle.error_target));
  }
  oracle.tau = oracle_tau(config.target, config.w, config.alpha, n_mc, seed);
  oracle.beta = oracle_beta(config.source, config.target, config.w, config.alpha, n_mc, seed);
  return oracle;
}

TrialReport run_theorem_trial(const TrialConfig& config, const Oracle& oracle, std::size_t trial_id,
                              std::uint64_t seed) {
  if (config.n < 100) throw PreconditionError(fmt::format("trial size n={} below 100", config.n));
  const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(trial_id));

  const auto source = to_dataset(sample(config.source, config.n, derive_seed(trial_seed, "source")), config.w);
  const auto target = to_dataset(sample(config.target, config.n, derive_seed(trial_seed, "target")), config.w);
  const auto held_out = to_dataset(sample(config.target, config.n, derive_seed(trial_seed, "eval")), config.w);

  const auto spec = PredictorSpec::tps();
  const auto recalibrated = recalibrate(spec, source, target.scores(), config.alpha, QtcMethod::Qtc,
                                        derive_seed(trial_seed, "calibrate"));
  const auto coverage = evaluate(spec, recalibrated.threshold, held_out, derive_seed(trial_seed, "evaluate"));

  TrialReport report;
  report.trial_id = trial_id;
  report.beta_true = oracle.beta;
  report.beta_qtc = recalibrated.estimate.value;
  report.bound = theorem_bound(config.n, config.delta,
                               spurious_constant(config.source.p, config.target.p, config.w.w_sp));
  report.violated = std::abs(report.beta_qtc - report.beta_true) > report.bound;
  report.achieved_target_coverage = coverage.coverage;
  return report;
}

std::string trial_csv_header() {
  return "trial_id,n,alpha,delta,p_src,p_tgt,w_inv,w_sp,beta_true,beta_qtc,bound,violated,coverage";
}

std::string trial_csv_row(const TrialConfig& config, const TrialReport& report) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}", report.trial_id, config.n,
                     config.alpha, config.delta, config.source.p, config.target.p, config.w.w_inv,
                     config.w.w_sp, report.beta_true, report.beta_qtc, report.bound,
                     report.violated ? 1 : 0, report.achieved_target_coverage);
}

}  // namespace cshift::toy
