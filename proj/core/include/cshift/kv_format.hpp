#pragma once

// Flat `key=value` text records. A file holds one or more records separated
// by blank lines; `#` starts a comment line. Doubles are written in shortest
// round-trip form, so a write/read cycle is bit-exact.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cshift/conformal.hpp"
#include "cshift/qtc.hpp"

namespace cshift {

class KvRecord {
 public:
  void set(std::string key, std::string value);
  void set(std::string key, double value);
  void set(std::string key, std::size_t value);

  std::optional<std::string> find(std::string_view key) const;
  /// Throws ParseError when the key is absent or not a number.
  std::string get(std::string_view key) const;
  double get_double(std::string_view key) const;
  std::size_t get_size(std::string_view key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string format_records(const std::vector<KvRecord>& records);
std::vector<KvRecord> parse_records(std::string_view text);

void write_records(const std::filesystem::path& path, const std::vector<KvRecord>& records);
std::vector<KvRecord> read_records(const std::filesystem::path& path);

/// Threshold plus the predictor it belongs to; `method` names the procedure
/// that produced it ("none", "qtc", "chr", ...).
KvRecord threshold_record(const Threshold& threshold, const PredictorSpec& spec,
                          std::string_view method);
Threshold threshold_from_record(const KvRecord& record);
PredictorSpec predictor_from_record(const KvRecord& record);
std::string method_from_record(const KvRecord& record);

KvRecord estimate_record(const QtcEstimate& estimate);
KvRecord report_record(const CoverageReport& report);

}  // namespace cshift
