#include "cshift/scores.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>

#include "cshift/errors.hpp"
#include "cshift/seeding.hpp"

namespace cshift {

namespace {

constexpr std::array<char, 8> kMagic = {'C', 'S', 'H', 'I', 'F', 'T', '0', '1'};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view field, std::size_t row, std::string_view what) {
  T value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || field.empty()) {
    throw ParseError(fmt::format("cannot parse {} '{}' at row {}", what, field, row));
  }
  return value;
}

// Little-endian encoding independent of host byte order.
template <typename T>
void put_le(std::string& out, T value) {
  const auto bits = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::little) {
    out.append(reinterpret_cast<const char*>(bits.data()), sizeof(T));
  } else {
    for (std::size_t i = sizeof(T); i-- > 0;) out.push_back(static_cast<char>(bits[i]));
  }
}

template <typename T>
T get_le(std::istream& in, const std::filesystem::path& path) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
    throw ParseError(fmt::format("{}: truncated binary file", path.string()));
  }
  if constexpr (std::endian::native != std::endian::little) std::reverse(bytes.begin(), bytes.end());
  return std::bit_cast<T>(bytes);
}

Dataset make_dataset(std::vector<double> values, std::size_t rows, std::size_t classes,
                     const std::vector<std::int64_t>& raw_labels) {
  ScoreMatrix scores(std::move(values), rows, classes);
  if (raw_labels.empty()) return UnlabeledDataset(std::move(scores));

  const bool first_unlabeled = raw_labels.front() == kUnlabeled;
  std::vector<std::size_t> labels;
  labels.reserve(rows);
  for (std::size_t i = 0; i < raw_labels.size(); ++i) {
    const auto label = raw_labels[i];
    if ((label == kUnlabeled) != first_unlabeled) {
      throw ValidationError(fmt::format("mixed labeled and unlabeled rows at row {}", i + 1));
    }
    if (label < kUnlabeled) {
      throw ValidationError(fmt::format("negative label {} at row {}", label, i + 1));
    }
    if (label != kUnlabeled && static_cast<std::uint64_t>(label) >= classes) {
      throw ValidationError(
          fmt::format("label {} out of range for {} classes at row {}", label, classes, i + 1));
    }
    if (!first_unlabeled) labels.push_back(static_cast<std::size_t>(label));
  }
  if (first_unlabeled) return UnlabeledDataset(std::move(scores));
  return LabeledDataset(std::move(scores), std::move(labels));
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("cannot open {}", path.string()));

  std::string line;
  std::size_t classes = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto header = split_fields(line);
    if (header.size() < 3 || header.front() != "label") {
      throw ParseError(fmt::format("{}: expected header 'label,c0,c1,...'", path.string()));
    }
    classes = header.size() - 1;
    break;
  }
  if (classes == 0) throw ParseError(fmt::format("{}: empty file", path.string()));

  std::vector<double> values;
  std::vector<std::int64_t> labels;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto fields = split_fields(line);
    if (fields.size() != classes + 1) {
      throw ParseError(fmt::format("expected {} columns, found {} at row {}", classes + 1,
                                   fields.size(), row));
    }
    labels.push_back(parse_number<std::int64_t>(fields[0], row, "label"));
    for (std::size_t j = 1; j < fields.size(); ++j) {
      values.push_back(parse_number<double>(fields[j], row, "score"));
    }
  }
  if (row == 0) throw ParseError(fmt::format("{}: no data rows", path.string()));
  return make_dataset(std::move(values), row, classes, labels);
}

Dataset load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open {}", path.string()));

  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw ParseError(fmt::format("{}: bad magic, expected CSHIFT01", path.string()));
  }
  const auto rows = get_le<std::uint64_t>(in, path);
  const auto classes = get_le<std::uint64_t>(in, path);
  const auto has_labels = get_le<std::uint8_t>(in, path);
  if (rows == 0 || classes < 2) {
    throw ParseError(fmt::format("{}: invalid shape {}x{}", path.string(), rows, classes));
  }

  std::vector<double> values(rows * classes);
  for (auto& v : values) v = get_le<double>(in, path);
  std::vector<std::int64_t> labels;
  if (has_labels != 0) {
    labels.resize(rows);
    for (auto& l : labels) l = get_le<std::int64_t>(in, path);
  }
  return make_dataset(std::move(values), rows, classes, labels);
}

const ScoreMatrix& scores_of(const Dataset& d) {
  return std::visit([](const auto& x) -> const ScoreMatrix& { return x.scores(); }, d);
}

}  // namespace

ScoreMatrix::ScoreMatrix(std::vector<double> values, std::size_t rows, std::size_t classes)
    : rows_(rows), classes_(classes), values_(std::move(values)) {
  if (rows_ < 1) throw ValidationError("score matrix needs at least one row");
  if (classes_ < 2) throw ValidationError("score matrix needs at least two classes");
  if (values_.size() != rows_ * classes_) {
    throw ValidationError(fmt::format("score buffer holds {} values, expected {}x{}",
                                      values_.size(), rows_, classes_));
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    double* r = values_.data() + i * classes_;
    for (std::size_t j = 0; j < classes_; ++j) {
      const double v = r[j];
      if (!std::isfinite(v) || v < -kRowSumTolerance || v > 1.0 + kRowSumTolerance) {
        throw ValidationError(fmt::format("entry {} outside [0,1] at row {}", v, i + 1));
      }
      r[j] = std::clamp(v, 0.0, 1.0);
    }
    const double sum = std::accumulate(r, r + classes_, 0.0);
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw ValidationError(fmt::format("row sum {} exceeds tolerance at row {}", sum, i + 1));
    }
    // rows already within rounding noise of 1 are kept as-is so a save/load
    // round trip is bit-exact (renormalizing need not be idempotent)
    if (std::abs(sum - 1.0) > 4.0 * static_cast<double>(classes_) * std::numeric_limits<double>::epsilon()) {
      for (std::size_t j = 0; j < classes_; ++j) r[j] /= sum;
    }
  }
}

ScoreMatrix ScoreMatrix::select(std::span<const std::size_t> indices) const {
  std::vector<double> picked;
  picked.reserve(indices.size() * classes_);
  for (const auto i : indices) {
    const auto r = row(i);
    picked.insert(picked.end(), r.begin(), r.end());
  }
  return ScoreMatrix(std::move(picked), indices.size(), classes_);
}

LabeledDataset::LabeledDataset(ScoreMatrix scores, std::vector<std::size_t> labels)
    : scores_(std::move(scores)), labels_(std::move(labels)) {
  if (labels_.size() != scores_.rows()) {
    throw ValidationError(fmt::format("{} labels for {} score rows", labels_.size(), scores_.rows()));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] >= scores_.classes()) {
      throw ValidationError(fmt::format("label {} out of range for {} classes at row {}",
                                        labels_[i], scores_.classes(), i + 1));
    }
  }
}

LabeledDataset LabeledDataset::select(std::span<const std::size_t> indices) const {
  std::vector<std::size_t> picked;
  picked.reserve(indices.size());
  for (const auto i : indices) picked.push_back(labels_[i]);
  return LabeledDataset(scores_.select(indices), std::move(picked));
}

FileFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".bin" ? FileFormat::Binary : FileFormat::Csv;
}

Dataset load_dataset(const std::filesystem::path& path, FileFormat format) {
  if (!std::filesystem::exists(path)) {
    throw ParseError(fmt::format("no such file: {}", path.string()));
  }
  return format == FileFormat::Binary ? load_binary(path) : load_csv(path);
}

Dataset load_dataset(const std::filesystem::path& path) {
  return load_dataset(path, format_for_path(path));
}

LabeledDataset load_labeled(const std::filesystem::path& path) {
  auto dataset = load_dataset(path);
  if (auto* labeled = std::get_if<LabeledDataset>(&dataset)) return std::move(*labeled);
  throw ValidationError(fmt::format("{}: labels required but file is unlabeled", path.string()));
}

UnlabeledDataset load_unlabeled(const std::filesystem::path& path) {
  const auto dataset = load_dataset(path);
  return UnlabeledDataset(scores_of(dataset));
}

void save_dataset(const std::filesystem::path& path, const Dataset& dataset, FileFormat format) {
  const auto& scores = scores_of(dataset);
  const auto* labeled = std::get_if<LabeledDataset>(&dataset);
  const std::size_t n = scores.rows();
  const std::size_t classes = scores.classes();

  std::string out;
  if (format == FileFormat::Binary) {
    out.append(kMagic.data(), kMagic.size());
    put_le<std::uint64_t>(out, n);
    put_le<std::uint64_t>(out, classes);
    put_le<std::uint8_t>(out, labeled != nullptr ? 1 : 0);
    for (const double v : scores.values()) put_le<double>(out, v);
    if (labeled != nullptr) {
      for (const auto l : labeled->labels()) put_le<std::int64_t>(out, static_cast<std::int64_t>(l));
    }
  } else {
    out += "label";
    for (std::size_t j = 0; j < classes; ++j) out += fmt::format(",c{}", j);
    out += '\n';
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t label =
          labeled != nullptr ? static_cast<std::int64_t>(labeled->labels()[i]) : kUnlabeled;
      out += fmt::format("{}", label);
      // shortest round-trip representation
      for (const double v : scores.row(i)) out += fmt::format(",{}", v);
      out += '\n';
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ParseError(fmt::format("cannot write {}", path.string()));
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw ParseError(fmt::format("write failed for {}", path.string()));
}

void save_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  save_dataset(path, dataset, format_for_path(path));
}

std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(derive_seed(seed, "split"));
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& dataset, double fraction,
                                                std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw PreconditionError(fmt::format("split fraction {} outside (0,1)", fraction));
  }
  const std::size_t n = dataset.size();
  const std::size_t first = robust_ceil(fraction * static_cast<double>(n));
  if (first < 1 || first >= n) {
    throw PreconditionError(fmt::format(
        "degenerate split: fraction {} of {} rows gives parts of size {} and {}", fraction, n,
        first, n - std::min(first, n)));
  }
  const auto perm = random_permutation(n, seed);
  const std::span<const std::size_t> all(perm);
  return {dataset.select(all.first(first)), dataset.select(all.subspan(first))};
}

}  // namespace cshift
