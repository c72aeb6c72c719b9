#include "cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "cshift/conformal.hpp"
#include "cshift/errors.hpp"
#include "cshift/kv_format.hpp"
#include "cshift/qtc.hpp"
#include "cshift/regression.hpp"
#include "cshift/scores.hpp"
#include "cshift/seeding.hpp"
#include "cshift/synthetic.hpp"
#include "cshift/toymodel.hpp"

namespace cshift::cli {

namespace {

constexpr const char* kReportHeader =
    "method,predictor,alpha,tau,coverage,avg_set_size,median_set_size,n_eval,seed";

struct PredictorOptions {
  std::string name = "tps";
  double lambda = 0.0;
  std::size_t k_reg = 0;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* kreg_opt = nullptr;

  void add_to(CLI::App* app) {
    app->add_option("--predictor", name, "Conformal predictor")
        ->check(CLI::IsMember({"tps", "aps", "raps"}))
        ->capture_default_str();
    lambda_opt = app->add_option("--lambda", lambda, "RAPS regularization weight (raps only)");
    kreg_opt = app->add_option("--kreg", k_reg, "RAPS number of unpenalized ranks (raps only)");
  }

  PredictorSpec resolve() const {
    if (name != "raps" && (lambda_opt->count() > 0 || kreg_opt->count() > 0)) {
      throw ParseError("--lambda and --kreg are only valid with --predictor raps");
    }
    return parse_predictor(name, lambda, k_reg);
  }
};

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError(fmt::format("'{}' is not a number", text));
  }
  if (used != text.size()) throw ParseError(fmt::format("'{}' is not a number", text));
  return value;
}

void append_report_rows(const std::filesystem::path& path, const std::vector<std::string>& rows) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream file(path, std::ios::binary | std::ios::app);
  if (!file) throw ParseError(fmt::format("cannot write {}", path.string()));
  if (fresh) file << kReportHeader << '\n';
  for (const auto& row : rows) file << row << '\n';
  if (!file) throw ParseError(fmt::format("write failed for {}", path.string()));
}

std::string report_row(const std::string& method, const PredictorSpec& spec, const Threshold& thr,
                       const CoverageReport& report, std::uint64_t seed) {
  return fmt::format("{},{},{},{},{},{},{},{},{}", method, spec.name(), thr.alpha, thr.tau,
                     report.coverage, report.avg_set_size, report.median_set_size, report.n_eval,
                     seed);
}

// ---------------------------------------------------------------- calibrate

struct CalibrateCommand {
  PredictorOptions predictor;
  std::string alpha = "0.1";
  std::string cal;
  std::string out;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    predictor.add_to(app);
    app->add_option("--alpha", alpha, "Miscoverage level, list or start:stop:step grid")
        ->capture_default_str();
    app->add_option("--cal", cal, "Labeled calibration scores (.csv or .bin)")->required();
    app->add_option("--out", out, "Threshold file to write")->required();
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
  }

  int run(std::ostream& os) const {
    const auto spec = predictor.resolve();
    const auto alphas = parse_alpha_grid(alpha);
    const auto data = load_labeled(cal);
    const std::uint64_t calibration_seed = derive_seed(seed, "calibrate");

    std::vector<KvRecord> records;
    bool saturated = false;
    for (const double a : alphas) {
      const auto thr = calibrate(spec, data, a, calibration_seed);
      saturated = saturated || thr.saturated;
      records.push_back(threshold_record(thr, spec, "none"));
      fmt::print(os, "tau={} alpha={}{}\n", thr.tau, thr.alpha, thr.saturated ? " saturated" : "");
    }
    write_records(out, records);
    return saturated ? kSaturated : kOk;
  }
};

// -------------------------------------------------------------- recalibrate

struct RecalibrateCommand {
  PredictorOptions predictor;
  std::string alpha = "0.1";
  std::string methods = "qtc";
  std::string source;
  std::string target;
  std::string out;
  std::string eval;
  std::string report;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    predictor.add_to(app);
    app->add_option("--alpha", alpha, "Target miscoverage level, list or start:stop:step grid")
        ->capture_default_str();
    app->add_option("--method", methods, "Comma-separated subset of qtc,qtc-sc,qtc-st,none")
        ->capture_default_str();
    app->add_option("--source", source, "Labeled source calibration scores")->required();
    app->add_option("--target", target, "Target scores (labels ignored if present)")->required();
    app->add_option("--out", out, "Threshold file to write; QTC estimates go to <out>.qtc")
        ->required();
    app->add_option("--eval", eval, "Optional labeled target set to evaluate each threshold on");
    app->add_option("--report", report, "CSV report to append evaluation rows to (needs --eval)");
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
  }

  int run(std::ostream& os, std::ostream& es) const {
    const auto spec = predictor.resolve();
    const auto alphas = parse_alpha_grid(alpha);
    const auto method_names = split_commas(methods);
    if (method_names.empty()) throw ParseError("--method needs at least one method");
    for (const auto& m : method_names) {
      if (m != "none") parse_qtc_method(m);
    }
    if (!report.empty() && eval.empty()) throw ParseError("--report requires --eval");

    const auto source_data = load_labeled(source);
    const auto target_data = load_unlabeled(target);
    std::optional<LabeledDataset> eval_data;
    if (!eval.empty()) eval_data = load_labeled(eval);

    const std::uint64_t calibration_seed = derive_seed(seed, "calibrate");
    const std::uint64_t evaluation_seed = derive_seed(seed, "evaluate");

    std::vector<KvRecord> thresholds;
    std::vector<KvRecord> estimates;
    std::vector<std::string> rows;
    bool saturated = false;
    for (const double a : alphas) {
      for (const auto& m : method_names) {
        Threshold thr;
        if (m == "none") {
          thr = calibrate(spec, source_data, a, calibration_seed);
        } else {
          try {
            const auto result = recalibrate(spec, source_data, target_data.scores(), a,
                                            parse_qtc_method(m), calibration_seed);
            thr = result.threshold;
            estimates.push_back(estimate_record(result.estimate));
            for (const auto& w : result.estimate.warnings) fmt::print(es, "warning: {}\n", w);
          } catch (const SaturationError& e) {
            fmt::print(es, "{} at alpha={}: {}\n", m, a, e.what());
            saturated = true;
            continue;
          }
        }
        saturated = saturated || thr.saturated;
        thresholds.push_back(threshold_record(thr, spec, m));
        fmt::print(os, "method={} alpha={} tau={}{}\n", m, a, thr.tau,
                   thr.saturated ? " saturated" : "");
        if (eval_data) {
          const auto cov = evaluate(spec, thr, *eval_data, evaluation_seed);
          rows.push_back(report_row(m, spec, thr, cov, seed));
        }
      }
    }
    if (!thresholds.empty()) write_records(out, thresholds);
    if (!estimates.empty()) write_records(out + ".qtc", estimates);
    if (!report.empty()) {
      append_report_rows(report, rows);
    } else {
      for (const auto& row : rows) fmt::print(os, "{}\n", row);
    }
    return saturated ? kSaturated : kOk;
  }
};

// ----------------------------------------------------------------- evaluate

struct EvaluateCommand {
  std::string test;
  std::vector<std::string> thresholds;
  std::string out;
  std::string report_kv;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    app->add_option("--test", test, "Labeled evaluation scores")->required();
    app->add_option("--thr", thresholds, "Threshold file(s); every record is evaluated")
        ->required();
    app->add_option("--out", out, "CSV report to append rows to (stdout if omitted)");
    app->add_option("--report-kv", report_kv, "Also write full key=value coverage reports");
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
  }

  int run(std::ostream& os) const {
    const auto data = load_labeled(test);
    const std::uint64_t evaluation_seed = derive_seed(seed, "evaluate");
    std::vector<std::string> rows;
    std::vector<KvRecord> reports;
    for (const auto& path : thresholds) {
      for (const auto& record : read_records(path)) {
        const auto spec = predictor_from_record(record);
        const auto thr = threshold_from_record(record);
        const auto method = method_from_record(record);
        const auto cov = evaluate(spec, thr, data, evaluation_seed);
        rows.push_back(report_row(method, spec, thr, cov, seed));
        auto kv = report_record(cov);
        kv.set("method", method);
        kv.set("tau", thr.tau);
        kv.set("alpha", thr.alpha);
        reports.push_back(std::move(kv));
      }
    }
    if (!out.empty()) {
      append_report_rows(out, rows);
    } else {
      fmt::print(os, "{}\n", kReportHeader);
      for (const auto& row : rows) fmt::print(os, "{}\n", row);
    }
    if (!report_kv.empty()) write_records(report_kv, reports);
    return kOk;
  }
};

// ----------------------------------------------------------------- baseline

struct BaselineCommand {
  PredictorOptions predictor;
  double alpha = 0.1;
  std::string extractor = "chr-minus";
  std::size_t bins = 10;
  std::size_t shifts = 90;
  std::size_t epochs = 5000;
  double learning_rate = 1e-3;
  std::string source;
  std::string target;
  std::string model_out;
  std::string out;
  std::string eval;
  std::string report;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    predictor.add_to(app);
    app->add_option("--alpha", alpha, "Miscoverage level")->capture_default_str();
    app->add_option("--extractor", extractor, "acr, dcr, chr, chr-minus or pcr")
        ->check(CLI::IsMember({"acr", "dcr", "chr", "chr-minus", "pcr"}))
        ->capture_default_str();
    app->add_option("--bins", bins, "Histogram bins for chr / chr-minus")->capture_default_str();
    app->add_option("--shifts", shifts, "Synthetic shifted distributions in the corpus")
        ->capture_default_str();
    app->add_option("--epochs", epochs, "Gradient descent epochs")->capture_default_str();
    app->add_option("--lr", learning_rate, "Learning rate")->capture_default_str();
    app->add_option("--source", source, "Labeled source calibration scores")->required();
    app->add_option("--target", target, "Target scores to predict a threshold for");
    app->add_option("--model-out", model_out, "Write the trained regressor here");
    app->add_option("--out", out, "Threshold file for the predicted tau (needs --target)");
    app->add_option("--eval", eval, "Labeled target set to evaluate the predicted tau on");
    app->add_option("--report", report, "CSV report to append the evaluation row to");
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
  }

  int run(std::ostream& os, std::ostream& es) const {
    const auto spec = predictor.resolve();
    const auto kind = parse_extractor(extractor);
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParseError(fmt::format("alpha {} outside (0,1)", alpha));
    if ((!out.empty() || !eval.empty()) && target.empty()) {
      throw ParseError("--out and --eval need --target");
    }
    if (!report.empty() && eval.empty()) throw ParseError("--report requires --eval");
    if (shifts == 0) throw ParseError("empty corpus: --shifts must be positive");

    const auto source_data = load_labeled(source);
    const auto corpus = build_corpus(source_data, spec, alpha, shifts, kind, bins,
                                     derive_seed(seed, "corpus"));
    for (const auto& w : corpus.warnings) fmt::print(es, "warning: {}\n", w);
    if (corpus.entries.empty()) throw ParseError("empty corpus: every shift saturated");

    TrainingOptions options;
    options.epochs = epochs;
    options.learning_rate = learning_rate;
    options.seed = derive_seed(seed, "train");
    const auto trained = train(corpus, options);
    fmt::print(os, "extractor={} entries={} final_loss={}\n", to_string(kind),
               corpus.entries.size(), trained.final_loss);
    if (!model_out.empty()) trained.model.save(model_out);

    if (target.empty()) return kOk;
    const auto target_data = load_unlabeled(target);
    const auto features = extract_features(target_data.scores(), kind, bins, &source_data.scores());
    const std::optional<double> offset =
        kind == FeatureExtractor::Dcr ? std::optional<double>(corpus.source_tau) : std::nullopt;

    Threshold thr;
    thr.tau = predict_tau(trained.model, features, offset);
    thr.alpha = alpha;
    thr.source_tag = to_string(kind);
    fmt::print(os, "tau={} alpha={}\n", thr.tau, thr.alpha);
    if (!out.empty()) write_records(out, {threshold_record(thr, spec, to_string(kind))});
    if (!eval.empty()) {
      const auto cov = evaluate(spec, thr, load_labeled(eval), derive_seed(seed, "evaluate"));
      const auto row = report_row(to_string(kind), spec, thr, cov, seed);
      if (!report.empty()) {
        append_report_rows(report, {row});
      } else {
        fmt::print(os, "{}\n{}\n", kReportHeader, row);
      }
    }
    return kOk;
  }
};

// ----------------------------------------------------------------- simulate

struct SimulateCommand {
  std::size_t trials = 100;
  std::size_t n = 10000;
  double alpha = 0.02;
  double delta = 0.1;
  double p_source = 0.9;
  double p_target = 0.7;
  double w_inv = 1.0;
  double w_sp = 0.5;
  double gamma = 0.05;
  double c = 1.0;
  std::size_t n_mc = 10'000'000;
  std::string out;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    app->add_option("--trials", trials, "Independent trials")->capture_default_str();
    app->add_option("--n", n, "Samples per source / target set")->capture_default_str();
    app->add_option("--alpha", alpha, "Target miscoverage")->capture_default_str();
    app->add_option("--delta", delta, "Failure probability of the bound")->capture_default_str();
    app->add_option("--psrc", p_source, "Spurious agreement on the source")->capture_default_str();
    app->add_option("--ptgt", p_target, "Spurious agreement on the target")->capture_default_str();
    app->add_option("--winv", w_inv, "Invariant feature weight")->capture_default_str();
    app->add_option("--wsp", w_sp, "Spurious feature weight")->capture_default_str();
    app->add_option("--gamma", gamma, "Margin of the invariant feature")->capture_default_str();
    app->add_option("--c", c, "Range of the invariant feature")->capture_default_str();
    app->add_option("--n-mc", n_mc, "Monte Carlo samples for the oracle")->capture_default_str();
    app->add_option("--out", out, "CSV file of per-trial reports (stdout if omitted)");
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
  }

  int run(std::ostream& os) const {
    toy::TrialConfig config;
    config.source = {gamma, c, p_source};
    config.target = {gamma, c, p_target};
    config.w = {w_inv, w_sp};
    config.alpha = alpha;
    config.delta = delta;
    config.n = n;
    if (trials == 0) throw ParseError("--trials must be positive");

    const auto oracle = toy::compute_oracle(config, n_mc, derive_seed(seed, "oracle"), 0.9);

    std::string csv = toy::trial_csv_header() + "\n";
    std::size_t violations = 0;
    double coverage_error = 0.0;
    double beta_gap = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto report = toy::run_theorem_trial(config, oracle, t, derive_seed(seed, "trials"));
      violations += report.violated ? 1 : 0;
      coverage_error += std::abs(report.achieved_target_coverage - (1.0 - alpha));
      beta_gap += std::abs(report.beta_qtc - report.beta_true);
      csv += toy::trial_csv_row(config, report) + "\n";
    }
    const double count = static_cast<double>(trials);
    const auto c_sp = toy::spurious_constant(p_source, p_target, w_sp);
    const auto summary = fmt::format(
        "summary trials={} violations={} violation_fraction={} mean_abs_beta_error={} "
        "mean_abs_coverage_error={} beta_true={} tau_oracle={} bound={} c_sp={}",
        trials, violations, static_cast<double>(violations) / count, beta_gap / count,
        coverage_error / count, oracle.beta, oracle.tau, toy::theorem_bound(n, delta, c_sp), c_sp);

    if (!out.empty()) {
      std::ofstream file(out, std::ios::binary | std::ios::trunc);
      if (!file) throw ParseError(fmt::format("cannot write {}", out));
      file << csv;
    } else {
      os << csv;
    }
    fmt::print(os, "{}\n", summary);
    return kOk;
  }
};

// ----------------------------------------------------------------- generate

struct GenerateCommand {
  std::size_t n = 1000;
  SyntheticScoreConfig config;
  bool unlabeled = false;
  std::string out;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    app->add_option("--n", n, "Rows")->capture_default_str();
    app->add_option("--classes", config.classes, "Classes")->capture_default_str();
    app->add_option("--signal", config.signal, "True-class logit boost")->capture_default_str();
    app->add_option("--noise", config.noise, "Logit noise standard deviation")->capture_default_str();
    app->add_option("--log-temperature", config.log_temperature, "Log temperature of the softmax")
        ->capture_default_str();
    app->add_flag("--calibrated", config.calibrated, "Draw labels from the scores");
    app->add_flag("--unlabeled", unlabeled, "Write -1 in the label column");
    app->add_option("--out", out, "Output file (.csv or .bin)")->required();
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
  }

  int run() const {
    auto data = synthetic_scores(n, config, derive_seed(seed, "generate"));
    if (unlabeled) {
      save_dataset(out, UnlabeledDataset(data.scores()));
    } else {
      save_dataset(out, data);
    }
    return kOk;
  }
};

// CLI11 only reads config files attached to the root app, so subcommand
// --config files are expanded into --key=value arguments here. Keys already
// given on the command line are skipped, which gives flags precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::optional<std::string> file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) file = args[i + 1];
    if (args[i].starts_with("--config=")) file = args[i].substr(9);
  }
  if (!file) return args;

  std::ifstream in(*file);
  if (!in) throw Error(fmt::format("cannot open config file {}", *file));
  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.starts_with(flag + "=");
    });
  };
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };

  std::vector<std::string> expanded = args;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(fmt::format("config line {} is not key=value: {}", number, line));
    }
    const auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty() || key == "config") {
      throw ParseError(fmt::format("config line {} has an invalid key", number));
    }
    if (!given(key)) expanded.push_back(fmt::format("--{}={}", key, value));
  }
  return expanded;
}

}  // namespace

std::vector<double> parse_alpha_grid(const std::string& text) {
  std::vector<double> alphas;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw ParseError(fmt::format("alpha grid '{}' is not start:stop:step", text));
    const double start = parse_double(parts[0]);
    const double stop = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (!(step > 0.0) || stop < start) {
      throw ParseError(fmt::format("alpha grid '{}' needs step > 0 and stop >= start", text));
    }
    for (std::size_t i = 0;; ++i) {
      const double value = start + static_cast<double>(i) * step;
      if (value > stop + 1e-12) break;
      // snap to 12 decimals so 0.7 + 3 * 0.04 prints as 0.82
      alphas.push_back(std::round(value * 1e12) / 1e12);
    }
  } else {
    for (const auto& item : split_commas(text)) alphas.push_back(parse_double(item));
  }
  if (alphas.empty()) throw ParseError("empty alpha grid");
  for (const double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw ParseError(fmt::format("alpha {} outside (0,1)", a));
  }
  return alphas;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conformal prediction under distribution shift: calibration, QTC recalibration, "
               "regression baselines and toy-model verification",
               "cshift"};
  app.require_subcommand(1);

  CalibrateCommand calibrate_cmd;
  RecalibrateCommand recalibrate_cmd;
  EvaluateCommand evaluate_cmd;
  BaselineCommand baseline_cmd;
  SimulateCommand simulate_cmd;
  GenerateCommand generate_cmd;

  std::function<int()> action;
  std::string config_file;
  auto add = [&](const char* name, const char* help, auto& command, std::function<int()> body) {
    CLI::App* sub = app.add_subcommand(name, help);
    // parsed but unused: expand_config has already merged the file
    sub->add_option("--config", config_file, "key=value file; command-line flags take precedence");
    command.add_to(sub);
    sub->callback([&action, body] { action = body; });
  };
  add("calibrate", "Calibrate a conformal predictor on labeled scores", calibrate_cmd,
      [&] { return calibrate_cmd.run(out); });
  add("recalibrate", "Recalibrate for a target distribution from unlabeled scores",
      recalibrate_cmd, [&] { return recalibrate_cmd.run(out, err); });
  add("evaluate", "Measure coverage and set size of thresholds on labeled scores", evaluate_cmd,
      [&] { return evaluate_cmd.run(out); });
  add("baseline", "Train a regression baseline and predict a target threshold", baseline_cmd,
      [&] { return baseline_cmd.run(out, err); });
  add("simulate", "Verify the QTC estimation bound on the spurious-correlation model",
      simulate_cmd, [&] { return simulate_cmd.run(out); });
  add("generate", "Write synthetic classifier scores", generate_cmd,
      [&] { return generate_cmd.run(); });

  std::vector<std::string> reversed;
  try {
    const auto expanded = expand_config(args);
    reversed.assign(expanded.rbegin(), expanded.rend());
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kIoError;
  }
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << '\n';
      return kOk;
    }
    fmt::print(err, "error: {}\n", e.what());
    return kIoError;
  }

  try {
    return action ? action() : kIoError;
  } catch (const SaturationError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kSaturated;
  } catch (const NumericError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kNumericFailure;
  } catch (const PreconditionError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kPrecondition;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kIoError;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kIoError;
  }
}

}  // namespace cshift::cli
