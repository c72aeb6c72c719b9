#pragma once

// Split-conformal set predictors over softmax scores.
//
// Every predictor is described by a conformity score s(row, label, u), the
// smallest threshold that admits `label`, and its prediction set is exactly
// { l : s(row, l, u) <= tau }. Both are computed by the same code path, so the
// set/score duality holds bit-for-bit and nesting in tau is automatic.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cshift/scores.hpp"

namespace cshift {

enum class PredictorKind { Tps, Aps, Raps };

class PredictorSpec {
 public:
  static PredictorSpec tps() { return PredictorSpec(PredictorKind::Tps, 0.0, 0); }
  static PredictorSpec aps() { return PredictorSpec(PredictorKind::Aps, 0.0, 0); }
  /// Throws PreconditionError if lambda < 0.
  static PredictorSpec raps(double lambda, std::size_t k_reg);

  PredictorKind kind() const noexcept { return kind_; }
  double lambda() const noexcept { return lambda_; }
  std::size_t k_reg() const noexcept { return k_reg_; }
  bool randomized() const noexcept { return kind_ != PredictorKind::Tps; }

  /// Largest meaningful threshold: 1 for TPS/APS, 1 + lambda*max(0, L - k_reg) for RAPS.
  double max_tau(std::size_t classes) const noexcept;

  /// "tps", "aps" or "raps".
  std::string name() const;

  friend bool operator==(const PredictorSpec&, const PredictorSpec&) = default;

 private:
  PredictorSpec(PredictorKind kind, double lambda, std::size_t k_reg)
      : kind_(kind), lambda_(lambda), k_reg_(k_reg) {}

  PredictorKind kind_;
  double lambda_;
  std::size_t k_reg_;
};

/// Parses "tps" / "aps" / "raps"; lambda and k_reg only apply to RAPS.
PredictorSpec parse_predictor(const std::string& name, double lambda = 0.0, std::size_t k_reg = 0);

struct Threshold {
  double tau = 0.0;
  double alpha = 0.0;
  /// Provenance, e.g. "calibrate" or "qtc". Saturated thresholds carry ":saturated".
  std::string source_tag;
  bool saturated = false;
};

struct CoverageReport {
  double coverage = 0.0;
  double avg_set_size = 0.0;
  double median_set_size = 0.0;
  /// size_histogram[k] counts rows whose set has k elements, k = 0..L.
  std::vector<std::size_t> size_histogram;
  std::size_t n_eval = 0;
};

/// Classes ordered by descending score, ties broken by ascending index.
std::vector<std::size_t> rank_classes(std::span<const double> row);

/// Smallest tau admitting `label`. TPS ignores `u`.
double conformity_score(const PredictorSpec& spec, std::span<const double> row, std::size_t label,
                        double u);

/// Conformity scores of every class in one pass, indexed by class.
std::vector<double> conformity_scores(const PredictorSpec& spec, std::span<const double> row,
                                      double u);

/// Classes with conformity score <= tau, ascending by index.
std::vector<std::size_t> prediction_set(const PredictorSpec& spec, std::span<const double> row,
                                        double u, double tau);

/// tau* = the ceil((1-alpha)(n+1))-th smallest conformity score. When that
/// rank exceeds n the threshold saturates at max_tau and is flagged.
Threshold calibrate(const PredictorSpec& spec, const LabeledDataset& cal, double alpha,
                    std::uint64_t seed);

/// Conformity scores of the labeled rows (u drawn per row from `seed`).
std::vector<double> calibration_scores(const PredictorSpec& spec, const LabeledDataset& cal,
                                       std::uint64_t seed);

CoverageReport evaluate(const PredictorSpec& spec, const Threshold& threshold,
                        const LabeledDataset& test, std::uint64_t seed);

}  // namespace cshift
