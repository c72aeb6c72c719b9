#pragma once

// Classifier score matrices, labeled/unlabeled datasets and their file formats.
//
// CSV:    header `label,c0,...,c{L-1}`, one example per row. The label column
//         holds a 0-based class index, or -1 for an unlabeled example.
// Binary: magic `CSHIFT01`, u64 n, u64 L, u8 has_labels, n*L float64 scores
//         (row-major), then n int64 labels when has_labels. Little-endian.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace cshift {

/// Absolute tolerance on row sums and on entries straying outside [0, 1].
inline constexpr double kRowSumTolerance = 1e-4;

/// Label value marking an unlabeled row in CSV files.
inline constexpr std::int64_t kUnlabeled = -1;

/// n x L row-major matrix of class probabilities. Every row is a valid
/// probability vector; construction validates and renormalizes.
class ScoreMatrix {
 public:
  /// Validates `values` (row-major, rows*classes entries). Entries within
  /// tolerance outside [0,1] are clamped; rows within tolerance of unit sum are
  /// renormalized. Throws ValidationError naming the 1-based row otherwise.
  ScoreMatrix(std::vector<double> values, std::size_t rows, std::size_t classes);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t classes() const noexcept { return classes_; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * classes_, classes_};
  }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_[i * classes_ + j];
  }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Rows picked by index, in the given order.
  ScoreMatrix select(std::span<const std::size_t> indices) const;

  friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t classes_;
  std::vector<double> values_;
};

class LabeledDataset {
 public:
  /// Throws ValidationError on length mismatch or a label >= classes.
  LabeledDataset(ScoreMatrix scores, std::vector<std::size_t> labels);

  const ScoreMatrix& scores() const noexcept { return scores_; }
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return scores_.rows(); }
  std::size_t classes() const noexcept { return scores_.classes(); }

  LabeledDataset select(std::span<const std::size_t> indices) const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;

 private:
  ScoreMatrix scores_;
  std::vector<std::size_t> labels_;
};

class UnlabeledDataset {
 public:
  explicit UnlabeledDataset(ScoreMatrix scores) : scores_(std::move(scores)) {}

  const ScoreMatrix& scores() const noexcept { return scores_; }
  std::size_t size() const noexcept { return scores_.rows(); }
  std::size_t classes() const noexcept { return scores_.classes(); }

  friend bool operator==(const UnlabeledDataset&, const UnlabeledDataset&) = default;

 private:
  ScoreMatrix scores_;
};

using Dataset = std::variant<LabeledDataset, UnlabeledDataset>;

enum class FileFormat { Csv, Binary };

/// `.bin` selects Binary; everything else is read as CSV.
FileFormat format_for_path(const std::filesystem::path& path);

/// Loads and validates a dataset. Rows labeled -1 make the result unlabeled;
/// mixing -1 with real labels is an error. Throws ParseError / ValidationError
/// with the offending row number.
Dataset load_dataset(const std::filesystem::path& path, FileFormat format);
Dataset load_dataset(const std::filesystem::path& path);

/// Like load_dataset but requires labels.
LabeledDataset load_labeled(const std::filesystem::path& path);

/// Accepts either kind; labels, if present, are dropped.
UnlabeledDataset load_unlabeled(const std::filesystem::path& path);

void save_dataset(const std::filesystem::path& path, const Dataset& dataset, FileFormat format);
void save_dataset(const std::filesystem::path& path, const Dataset& dataset);

/// Uniformly random partition into sizes ceil(fraction*n) and the rest,
/// deterministic under `seed`. Both parts must be nonempty.
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& dataset, double fraction,
                                                std::uint64_t seed);

/// Index permutation used by split(); exposed for tests and tools.
std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed);

}  // namespace cshift
