#pragma once

// Binary spurious-correlation model.
//
//   y      ~ uniform{-1, +1}
//   x_inv  ~ U[gamma, c] if y = +1,  U[-c, -gamma] if y = -1
//   x_sp   =  y with probability p, -y otherwise
//
// scored by the logistic classifier f(x) = [1/(1+e^z), e^z/(1+e^z)] with
// z = w_inv * x_inv + w_sp * x_sp. Class index 0 is y = -1, index 1 is y = +1.
// Source and target distributions differ only in p.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cshift/scores.hpp"

namespace cshift::toy {

struct ModelParams {
  double gamma = 0.05;
  double c = 1.0;
  /// P[x_sp == y].
  double p = 0.9;

  /// Throws PreconditionError unless c > gamma >= 0 and p in [0, 1].
  void validate() const;
};

struct Classifier {
  double w_inv = 1.0;
  double w_sp = 0.5;

  /// Throws PreconditionError unless w_inv > 0 and w_sp != 0.
  void validate() const;
  double logit(double x_inv, int x_sp) const noexcept { return w_inv * x_inv + w_sp * x_sp; }
};

struct Sample {
  double x_inv = 0.0;
  int x_sp = 1;
  int y = 1;
};

std::vector<Sample> sample(const ModelParams& params, std::size_t n, std::uint64_t seed);

/// [P(y = -1), P(y = +1)].
std::array<double, 2> classify(const Classifier& w, double x_inv, int x_sp);
std::array<double, 2> classify(const Classifier& w, const Sample& s);

/// Rows of classify() outputs; labels y = -1 -> 0, y = +1 -> 1.
LabeledDataset to_dataset(const std::vector<Sample>& samples, const Classifier& w);

/// Monte Carlo error rate P[argmax f(x) != y].
double error_rate(const ModelParams& params, const Classifier& w, std::size_t n_mc,
                  std::uint64_t seed);

/// Oracle TPS threshold on the target: the tau with
/// P_target[misclassified and max f(x) >= tau] = alpha, by Monte Carlo.
/// Throws PreconditionError when alpha is not below the Monte Carlo error rate.
double oracle_tau(const ModelParams& target, const Classifier& w, double alpha, std::size_t n_mc,
                  std::uint64_t seed);

/// Source miscoverage of the oracle target threshold:
/// P_source[misclassified and max f(x) >= oracle_tau(target)].
double oracle_beta(const ModelParams& source, const ModelParams& target, const Classifier& w,
                   double alpha, std::size_t n_mc, std::uint64_t seed);

/// c_sp = (1 - p_tgt)(1 - p_src)^2 if w_sp > 0, else p_tgt * p_src^2.
double spurious_constant(double p_source, double p_target, double w_sp);

/// sqrt(2 ln(16/delta) / (n c_sp)).
double theorem_bound(std::size_t n, double delta, double c_sp);

struct TrialConfig {
  ModelParams source;
  ModelParams target;
  Classifier w;
  double alpha = 0.02;
  double delta = 0.1;
  std::size_t n = 10000;
};

/// Oracle quantities shared by every trial of one configuration.
struct Oracle {
  double tau = 0.0;
  double beta = 0.0;
  double error_source = 0.0;
  double error_target = 0.0;
  std::size_t n_mc = 0;
  std::uint64_t seed = 0;
};

/// Computes the oracle by Monte Carlo and checks alpha < margin * error rate
/// on both distributions (margin 1 for the bare precondition, 0.9 for the
/// command-line safety margin). Throws PreconditionError otherwise.
Oracle compute_oracle(const TrialConfig& config, std::size_t n_mc, std::uint64_t seed,
                      double margin = 1.0);

struct TrialReport {
  std::size_t trial_id = 0;
  double beta_true = 0.0;
  double beta_qtc = 0.0;
  double bound = 0.0;
  bool violated = false;
  double achieved_target_coverage = 0.0;
};

/// One verification trial: n source and n target samples, beta_QTC against
/// the oracle beta, and target coverage of TPS recalibrated on the source with
/// beta_QTC, measured on a fresh target set of size n.
TrialReport run_theorem_trial(const TrialConfig& config, const Oracle& oracle, std::size_t trial_id,
                              std::uint64_t seed);

/// Column names of trial_csv_row().
std::string trial_csv_header();
std::string trial_csv_row(const TrialConfig& config, const TrialReport& report);

}  // namespace cshift::toy
