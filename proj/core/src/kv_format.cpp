#include "cshift/kv_format.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>

#include "cshift/errors.hpp"

namespace cshift {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

void KvRecord::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

void KvRecord::set(std::string key, double value) { set(std::move(key), fmt::format("{}", value)); }

void KvRecord::set(std::string key, std::size_t value) {
  set(std::move(key), fmt::format("{}", value));
}

std::optional<std::string> KvRecord::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string KvRecord::get(std::string_view key) const {
  auto value = find(key);
  if (!value) throw ParseError(fmt::format("missing key '{}'", key));
  return *value;
}

double KvRecord::get_double(std::string_view key) const {
  const auto text = get(key);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(fmt::format("key '{}': '{}' is not a number", key, text));
  }
  return value;
}

std::size_t KvRecord::get_size(std::string_view key) const {
  const auto text = get(key);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(fmt::format("key '{}': '{}' is not a count", key, text));
  }
  return value;
}

std::string format_records(const std::vector<KvRecord>& records) {
  std::string out;
  for (std::size_t r = 0; r < records.size(); ++r) {
    if (r > 0) out += '\n';
    for (const auto& [k, v] : records[r].entries()) out += fmt::format("{}={}\n", k, v);
  }
  return out;
}

std::vector<KvRecord> parse_records(std::string_view text) {
  std::vector<KvRecord> records;
  KvRecord current;
  bool open = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) {
      if (open) records.push_back(std::move(current));
      current = KvRecord{};
      open = false;
      continue;
    }
    if (line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(fmt::format("line {}: expected key=value", line_no));
    }
    current.set(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
    open = true;
  }
  if (open) records.push_back(std::move(current));
  return records;
}

void write_records(const std::filesystem::path& path, const std::vector<KvRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError(fmt::format("cannot write {}", path.string()));
  out << format_records(records);
  if (!out) throw ParseError(fmt::format("write failed for {}", path.string()));
}

std::vector<KvRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  auto records = parse_records(buffer.str());
  if (records.empty()) throw ParseError(fmt::format("{}: no records", path.string()));
  return records;
}

KvRecord threshold_record(const Threshold& threshold, const PredictorSpec& spec,
                          std::string_view method) {
  KvRecord record;
  record.set("method", std::string(method));
  record.set("predictor", spec.name());
  if (spec.kind() == PredictorKind::Raps) {
    record.set("lambda", spec.lambda());
    record.set("kreg", spec.k_reg());
  }
  record.set("tau", threshold.tau);
  record.set("alpha", threshold.alpha);
  record.set("saturated", std::string(threshold.saturated ? "1" : "0"));
  record.set("source", threshold.source_tag);
  return record;
}

Threshold threshold_from_record(const KvRecord& record) {
  Threshold threshold;
  threshold.tau = record.get_double("tau");
  threshold.alpha = record.get_double("alpha");
  threshold.saturated = record.find("saturated").value_or("0") == "1";
  threshold.source_tag = record.find("source").value_or("");
  return threshold;
}

PredictorSpec predictor_from_record(const KvRecord& record) {
  const auto name = record.get("predictor");
  if (name == "raps") {
    return PredictorSpec::raps(record.get_double("lambda"), record.get_size("kreg"));
  }
  return parse_predictor(name);
}

std::string method_from_record(const KvRecord& record) {
  return record.find("method").value_or("none");
}

KvRecord estimate_record(const QtcEstimate& estimate) {
  KvRecord record;
  record.set("method", to_string(estimate.method));
  record.set("q", estimate.q_threshold);
  record.set("value", estimate.value);
  record.set("scale", estimate.scale);
  record.set("alpha", estimate.alpha);
  for (std::size_t i = 0; i < estimate.warnings.size(); ++i) {
    record.set(fmt::format("warning_{}", i), estimate.warnings[i]);
  }
  return record;
}

KvRecord report_record(const CoverageReport& report) {
  KvRecord record;
  record.set("coverage", report.coverage);
  record.set("avg_set_size", report.avg_set_size);
  record.set("median_set_size", report.median_set_size);
  record.set("n_eval", report.n_eval);
  for (std::size_t k = 0; k < report.size_histogram.size(); ++k) {
    record.set(fmt::format("hist_{}", k), report.size_histogram[k]);
  }
  return record;
}

}  // namespace cshift
