// Copyright 2026 The condage Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "condage/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "condage/artifact.hpp"
#include "condage/error.hpp"
#include "condage/fleet.hpp"
#include "condage/pipeline.hpp"
#include "condage/seed.hpp"
#include "condage/text.hpp"

#ifndef CONDAGE_VERSION
#define CONDAGE_VERSION "0.0.0"
#endif

namespace condage::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Settings that identify a run; hashed into the report header.
class RunHeader {
 public:
  RunHeader(std::string command, std::string mode, std::uint64_t seed)
      : command_(std::move(command)), mode_(std::move(mode)), seed_(seed) {}

  template <typename T>
  void set(const std::string& key, const T& value) {
    std::ostringstream s;
    if constexpr (std::is_floating_point_v<T>) {
      s << text::format_real(value);
    } else {
      s << value;
    }
    settings_[key] = s.str();
  }

  std::string hash() const {
    std::string canonical = command_ + '\n' + mode_ + '\n' + std::to_string(seed_) + '\n';
    for (const auto& [k, v] : settings_) canonical += k + '=' + v + '\n';
    return text::hex64(text::fnv1a(canonical));
  }

  std::string text(std::string_view prefix) const {
    std::ostringstream s;
    s << prefix << "condage " << CONDAGE_VERSION << '\n'
      << prefix << "command: " << command_ << '\n'
      << prefix << "mode: " << mode_ << '\n'
      << prefix << "seed: " << seed_ << '\n'
      << prefix << "config-hash: " << hash() << '\n';
    return s.str();
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::string command_;
  std::string mode_;
  std::uint64_t seed_;
  std::map<std::string, std::string> settings_;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

std::string file_fingerprint(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return text::hex64(text::fnv1a(buffer.str()));
}

fs::path prepare_out(const std::string& dir) {
  fs::path out(dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir + ": " + ec.message());
  return out;
}

std::pair<std::size_t, std::size_t> parse_k_range(const std::string& spec) {
  const auto dots = spec.find("..");
  const auto lo = text::parse_integer(dots == std::string::npos ? spec : spec.substr(0, dots));
  const auto hi = text::parse_integer(dots == std::string::npos ? spec : spec.substr(dots + 2));
  if (!lo || !hi) throw UsageError("--k-range expects A..B, got '" + spec + "'");
  if (*lo < 2) throw UsageError("--k-range lower bound must be at least 2");
  if (*hi < *lo) throw UsageError("--k-range " + spec + " is empty");
  return {static_cast<std::size_t>(*lo), static_cast<std::size_t>(*hi)};
}

Dataset load_auto(const fs::path& path, const FeatureSchema& schema) {
  const auto kind =
      has_inspection_year_column(path) ? DatasetKind::LongTerm : DatasetKind::OneTime;
  return load_dataset(path, schema, kind);
}

std::string warning_lines(const std::vector<DataWarning>& warnings) {
  std::ostringstream s;
  for (const auto& w : warnings) s << "warning: " << w.message << '\n';
  return s.str();
}

std::string metrics_csv(const MetricsReport& m) {
  std::ostringstream s;
  s << "Class,Precision,Recall,F1\n";
  const auto row = [&](const char* name, const ClassMetrics& c) {
    s << name << ',' << text::format_real(c.precision) << ',' << text::format_real(c.recall) << ','
      << text::format_real(c.f1) << '\n';
  };
  row("Failed", m.failed);
  row("Working", m.working);
  row("Average", m.macro);
  return s.str();
}

std::string optional_real(const std::optional<double>& v) {
  return v ? text::format_real(*v) : std::string();
}

std::string predictions_csv(const std::vector<AssetPrediction>& rows, std::string_view method) {
  std::ostringstream s;
  s << "AssetID,PhysicalAge,ConditionalAge,AgingRate,FutureAgingRate,FutureConditionalAge,"
       "Horizon,FailureProbability,PredictedStatus,Method\n";
  for (const auto& p : rows) {
    s << p.asset_id << ',' << text::format_real(p.physical_age) << ','
      << text::format_real(p.conditional_age_now) << ',' << text::format_real(p.aging_rate) << ','
      << optional_real(p.future_aging_rate) << ',' << text::format_real(p.future_conditional_age)
      << ',' << text::format_real(p.horizon) << ',' << text::format_real(p.probability) << ','
      << to_string(p.predicted) << ',' << method << '\n';
  }
  return s.str();
}

std::string ages_csv(const std::vector<AssetPrediction>& rows, std::string_view method) {
  std::ostringstream s;
  s << "AssetID,PhysicalAge,ConditionalAgeNow,AgingRate,FutureAgingRate,FutureConditionalAge,"
       "Method\n";
  for (const auto& p : rows) {
    s << p.asset_id << ',' << text::format_real(p.physical_age) << ','
      << text::format_real(p.conditional_age_now) << ',' << text::format_real(p.aging_rate) << ','
      << optional_real(p.future_aging_rate) << ',' << text::format_real(p.future_conditional_age)
      << ',' << method << '\n';
  }
  return s.str();
}

std::string scored_csv(const std::vector<ScoredPrediction>& rows) {
  std::ostringstream s;
  s << "AssetID,PhysicalAge,ConditionalAge,AgingRate,FutureAgingRate,FutureConditionalAge,"
       "Horizon,FailureProbability,PredictedStatus,ActualStatus\n";
  for (const auto& r : rows) {
    const auto& p = r.prediction;
    s << p.asset_id << ',' << text::format_real(p.physical_age) << ','
      << text::format_real(p.conditional_age_now) << ',' << text::format_real(p.aging_rate) << ','
      << optional_real(p.future_aging_rate) << ',' << text::format_real(p.future_conditional_age)
      << ',' << text::format_real(p.horizon) << ',' << text::format_real(p.probability) << ','
      << to_string(p.predicted) << ',' << to_string(r.actual) << '\n';
  }
  return s.str();
}

std::string sweep_section(const ConditionModel& model) {
  std::ostringstream s;
  s << "K  Silhouette  Inertia\n";
  for (const auto& e : model.sweep) {
    s << e.k << "  " << text::format_fixed(e.silhouette, 4) << "      "
      << text::format_fixed(e.inertia, 4) << '\n';
  }
  s << "selected K = " << model.aged.base.k << '\n';
  return s.str();
}

std::string cluster_age_section(const ConditionModel& model) {
  std::ostringstream s;
  s << "Cluster  Members  Conditional Age\n";
  for (std::size_t c = 0; c < model.aged.base.k; ++c) {
    s << (c + 1) << "        " << model.aged.base.member_counts[c] << "       "
      << text::format_fixed(model.aged.conditional_ages[c], 2) << '\n';
  }
  return s.str();
}

std::string classifier_section(const LogisticModel& m) {
  std::ostringstream s;
  s << "logistic: beta0 = " << text::format_real(m.beta0) << ", beta_physical = "
    << text::format_real(m.beta1) << ", beta_conditional = " << text::format_real(m.beta2) << '\n'
    << "iterations = " << m.iterations << ", mean log-likelihood = "
    << text::format_real(m.log_likelihood) << (m.separation_capped ? " (separation capped)" : "")
    << '\n';
  return s.str();
}

std::string sweep_csv(const ConditionModel& model) {
  std::ostringstream s;
  s << "K,Silhouette,Inertia,Selected\n";
  for (const auto& e : model.sweep) {
    s << e.k << ',' << text::format_real(e.silhouette) << ',' << text::format_real(e.inertia) << ','
      << (e.k == model.aged.base.k ? 1 : 0) << '\n';
  }
  return s.str();
}

std::string cluster_ages_csv(const ConditionModel& model) {
  std::ostringstream s;
  s << "Cluster,Members,ConditionalAge\n";
  for (std::size_t c = 0; c < model.aged.base.k; ++c) {
    s << (c + 1) << ',' << model.aged.base.member_counts[c] << ','
      << text::format_real(model.aged.conditional_ages[c]) << '\n';
  }
  return s.str();
}

// Flags shared by evaluate and compare.
struct PipelineFlags {
  std::string history;
  std::string truth;
  std::string schema;
  std::uint64_t seed = 0;
  std::string out;
  std::string k_range = "2..10";
  int restarts = 10;
  double train_ratio = 0.8;
  std::size_t similars = 5;
  std::optional<double> horizon;
  double threshold = 0.5;
  bool unconditional = false;

  void bind(CLI::App& sub) {
    sub.add_option("--history", history, "inspection history CSV")->required();
    sub.add_option("--truth", truth, "future status CSV")->required();
    sub.add_option("--schema", schema, "feature schema JSON")->required();
    sub.add_option("--seed", seed, "pipeline seed")->required();
    sub.add_option("--out", out, "output directory")->required();
    sub.add_option("--k-range", k_range, "candidate K values, A..B");
    sub.add_option("--restarts", restarts, "k-means restarts")->check(CLI::PositiveNumber);
    sub.add_option("--train-ratio", train_ratio, "training fraction")->check(CLI::Range(0.0, 1.0));
    sub.add_option("--similars", similars, "similar assets for long-term projection")
        ->check(CLI::PositiveNumber);
    sub.add_option("--horizon", horizon, "prediction horizon in years");
    sub.add_option("--threshold", threshold, "failure probability threshold")
        ->check(CLI::Range(0.0, 1.0));
    sub.add_flag("--unconditional", unconditional, "unconditional Weibull prediction");
  }

  PipelineConfig config() const {
    PipelineConfig c{seed};
    const auto [k_lo, k_hi] = parse_k_range(k_range);
    c.clustering.k_min = k_lo;
    c.clustering.k_max = k_hi;
    c.clustering.restarts = restarts;
    c.train_ratio = train_ratio;
    c.similars = similars;
    c.horizon = horizon;
    c.threshold = threshold;
    c.weibull_conditional = !unconditional;
    return c;
  }

  void record(RunHeader& h) const {
    h.set("history", file_fingerprint(history));
    h.set("truth", file_fingerprint(truth));
    h.set("schema", file_fingerprint(schema));
    h.set("k-range", k_range);
    h.set("restarts", restarts);
    h.set("train-ratio", train_ratio);
    h.set("similars", similars);
    h.set("horizon", horizon ? text::format_real(*horizon) : std::string("per-record"));
    h.set("threshold", threshold);
    h.set("weibull", unconditional ? "unconditional" : "conditional");
  }
};

struct LoadedPair {
  Dataset history;
  Dataset truth;
};

LoadedPair load_pair(const PipelineFlags& f) {
  const auto schema = load_schema(f.schema);
  return {load_auto(f.history, schema), load_dataset(f.truth, schema, DatasetKind::OneTime)};
}

std::string weibull_section(const WeibullModel& w, bool conditional) {
  std::ostringstream s;
  s << "weibull: alpha = " << text::format_real(w.alpha) << ", beta = " << text::format_real(w.beta)
    << ", failures = " << w.failures << ", censored = " << w.censored << '\n'
    << "weibull prediction: "
    << (conditional ? "conditional, P(fail by A+T | working at A)" : "unconditional, F(A+T)") << '\n';
  return s.str();
}

double max_physical_age(const Dataset& d) {
  double m = 0.0;
  for (const auto& r : d.records) m = std::max(m, r.physical_age);
  return m;
}

std::string weibull_curve(const WeibullModel& w, const Dataset& history) {
  std::ostringstream s;
  write_weibull_curve(s, w, std::max(1.0, 1.5 * max_physical_age(history)), 200);
  return s.str();
}

std::string single_mode_report(const RunHeader& h, const PipelineResult& r, bool weibull_conditional) {
  std::ostringstream s;
  s << h.text("# ") << '\n'
    << "train assets: " << r.train_assets << ", scored assets: " << r.test_assets << "\n\n"
    << format_confusion_matrix(r.confusion) << '\n'
    << format_metrics_table(r.metrics);
  for (const auto& name : r.metrics.undefined) s << "note: " << name << " undefined, reported as 0\n";
  if (r.condition_model) {
    s << '\n' << sweep_section(*r.condition_model) << '\n' << cluster_age_section(*r.condition_model);
  }
  if (r.classifier) s << '\n' << classifier_section(*r.classifier);
  if (r.weibull) s << '\n' << weibull_section(*r.weibull, weibull_conditional);
  return s.str();
}

std::string sensitivity_report(const RunHeader& h, std::string_view title,
                               const std::vector<ExperimentRow>& rows) {
  std::ostringstream s;
  s << h.text("# ") << '\n' << title << '\n';
  s << "Metric          ";
  for (const auto& r : rows) s << "  " << r.label;
  s << '\n' << "Average F1-Score";
  for (const auto& r : rows) {
    s << "  " << std::string(r.label.size() > 4 ? r.label.size() - 4 : 0, ' ')
      << display_metric(r.result.metrics.macro.f1);
  }
  s << '\n';
  return s.str();
}

std::string sensitivity_csv(const RunHeader& h, std::string_view key,
                            const std::vector<ExperimentRow>& rows) {
  std::ostringstream s;
  s << h.text("# ") << key << ",Precision,Recall,F1,TP,FN,FP,TN\n";
  for (const auto& r : rows) {
    const auto& m = r.result.metrics.macro;
    const auto& cm = r.result.confusion;
    s << r.label << ',' << text::format_real(m.precision) << ',' << text::format_real(m.recall)
      << ',' << text::format_real(m.f1) << ',' << cm.tp << ',' << cm.fn << ',' << cm.fp << ','
      << cm.tn << '\n';
  }
  return s.str();
}

// ---------------------------------------------------------------- learn

struct LearnFlags {
  std::string data;
  std::string schema;
  std::string k_range = "2..10";
  std::uint64_t seed = 0;
  std::string out;
  int restarts = 10;
  double train_ratio = 0.8;
  bool drop = false;
};

int cmd_learn(const LearnFlags& f, std::ostream& out) {
  const auto [k_lo, k_hi] = parse_k_range(f.k_range);
  const auto schema = load_schema(f.schema);
  Dataset data = load_auto(f.data, schema);
  const auto warnings = validate_dataset(data);
  if (f.drop) data = drop_outliers(data, warnings);
  // Long-term files contribute each asset's earliest inspection.
  const Dataset records = data.kind == DatasetKind::LongTerm ? earliest_records(data) : data;
  if (records.empty()) throw Error(ErrorCode::EmptyDataset, "no records to learn from");
  const bool has_failed = std::any_of(records.records.begin(), records.records.end(),
                                      [](const AssetRecord& r) { return r.status == Status::Failed; });
  const bool has_working = std::any_of(records.records.begin(), records.records.end(),
                                       [](const AssetRecord& r) { return r.status == Status::Working; });
  if (!has_failed || !has_working) {
    throw Error(ErrorCode::SingleClass, "training data contains only one status");
  }

  RunHeader header("learn", "learn", f.seed);
  header.set("data", file_fingerprint(f.data));
  header.set("schema", file_fingerprint(f.schema));
  header.set("k-range", f.k_range);
  header.set("restarts", f.restarts);
  header.set("train-ratio", f.train_ratio);
  header.set("drop-outliers", f.drop ? "yes" : "no");

  ClusteringOptions clustering;
  clustering.k_min = k_lo;
  clustering.k_max = k_hi;
  clustering.restarts = f.restarts;
  auto condition =
      learn_condition_model(records, clustering, derive_seed(f.seed, streams::kClustering));
  const auto split = split_dataset(records, f.train_ratio, derive_seed(f.seed, streams::kSplit));
  const auto examples = labeled_examples(condition, split.train);
  const auto classifier =
      train_logistic(oversample(examples, derive_seed(f.seed, streams::kOversample)));

  ConfusionMatrix cm;
  for (const auto& r : split.test.records) {
    cm.add(r.status, classify(classifier, r.physical_age, conditional_age_of(condition, r)));
  }
  const auto metrics = compute_metrics(cm);

  const auto dir = prepare_out(f.out);
  ModelArtifact artifact{condition, classifier,
                         {CONDAGE_VERSION, f.seed, header.hash(), file_fingerprint(f.data),
                          records.size()}};
  save_artifact(dir / "model.json", artifact);

  std::ostringstream report;
  report << header.text("# ") << '\n'
         << "records: " << records.size() << " (" << to_string(data.kind) << " input, "
         << data.size() << " rows)\n"
         << "train: " << split.train.size() << ", held out: " << split.test.size() << '\n'
         << warning_lines(warnings) << (f.drop && !warnings.empty() ? "outliers dropped\n" : "")
         << '\n'
         << sweep_section(condition) << '\n'
         << cluster_age_section(condition) << '\n'
         << classifier_section(classifier) << '\n'
         << "held-out classification\n"
         << format_confusion_matrix(cm) << '\n'
         << format_metrics_table(metrics);
  write_file(dir / "learn_report.txt", report.str());
  write_file(dir / "k_sweep.csv", sweep_csv(condition));
  write_file(dir / "cluster_ages.csv", cluster_ages_csv(condition));

  out << "learned K=" << condition.aged.base.k << " from " << records.size() << " records; wrote "
      << (dir / "model.json").string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- predict

struct PredictFlags {
  std::string model;
  std::string data;
  double horizon = 0.0;
  std::string mode = "one-time";
  std::size_t similars = 5;
  double threshold = 0.5;
  std::string out;
};

int cmd_predict(const PredictFlags& f, std::ostream& out) {
  const bool long_term = f.mode == "long-term";
  if (!long_term && f.mode != "one-time") {
    throw UsageError("--mode must be one-time or long-term");
  }
  if (f.horizon < 0.0) throw UsageError("--horizon must be non-negative");
  const auto artifact = load_artifact(f.model);
  const auto& model = artifact.condition;
  const Dataset data = load_auto(f.data, model.schema);
  if (long_term && data.kind != DatasetKind::LongTerm) {
    throw Error(ErrorCode::ModeDataMismatch,
                "long-term prediction needs multi-year data with an InspectionYear column");
  }
  const Dataset targets = data.kind == DatasetKind::LongTerm ? latest_records(data) : data;

  RunHeader header("predict", f.mode, artifact.metadata.seed);
  header.set("model", file_fingerprint(f.model));
  header.set("data", file_fingerprint(f.data));
  header.set("horizon", f.horizon);
  header.set("similars", f.similars);
  header.set("threshold", f.threshold);

  std::vector<AssetPrediction> rows;
  rows.reserve(targets.size());
  if (long_term) {
    const auto candidates = build_trajectories(data, model.aged, model.layout);
    const auto age_range = history_age_range(data);
    for (const auto& r : targets.records) {
      rows.push_back(predict_long_term(model, artifact.classifier, r, f.horizon, candidates,
                                       age_range, f.similars, f.threshold));
    }
  } else {
    for (const auto& r : targets.records) {
      rows.push_back(predict_one_time(model, artifact.classifier, r, f.horizon, f.threshold));
    }
  }

  std::size_t failed = 0;
  for (const auto& p : rows) failed += p.predicted == Status::Failed ? 1 : 0;

  const auto dir = prepare_out(f.out);
  const std::string method = long_term ? "long-term" : "one-time";
  write_file(dir / "predictions.csv", predictions_csv(rows, method));
  write_file(dir / "ages.csv", ages_csv(rows, method));
  std::ostringstream report;
  report << header.text("# ") << '\n'
         << "assets: " << rows.size() << ", predicted failed: " << failed
         << ", horizon: " << text::format_real(f.horizon) << " years\n";
  write_file(dir / "predict_report.txt", report.str());
  out << "predicted " << rows.size() << " assets (" << failed << " failed)\n";
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateFlags : PipelineFlags {
  std::string experiment = "predict-long-term";
  std::vector<std::size_t> sizes{1000, 750, 500, 250};
};

int cmd_evaluate(const EvaluateFlags& f, std::ostream& out) {
  const auto mode = parse_pipeline_mode(f.experiment);
  if (!mode && f.experiment != "noise" && f.experiment != "size") {
    throw UsageError("unknown experiment '" + f.experiment + "'");
  }
  const auto config = f.config();
  const auto data = load_pair(f);
  RunHeader header("evaluate", f.experiment, f.seed);
  f.record(header);
  const auto dir = prepare_out(f.out);

  if (mode) {
    const auto result = run_pipeline(data.history, data.truth, *mode, config);
    write_file(dir / "report.txt", single_mode_report(header, result, !f.unconditional));
    write_file(dir / "metrics.csv", header.text("# ") + metrics_csv(result.metrics));
    std::vector<ScoredPrediction> rows = result.predictions;
    write_file(dir / "predictions.csv", scored_csv(rows));
    if (result.weibull) write_file(dir / "weibull_curve.csv", weibull_curve(*result.weibull, data.history));
    out << f.experiment << ": macro F1 " << display_metric(result.metrics.macro.f1) << '\n';
    return kExitOk;
  }

  header.set("sizes", [&] {
    std::string s;
    for (const auto v : f.sizes) s += std::to_string(v) + ' ';
    return s;
  }());
  std::vector<ExperimentRow> rows;
  std::string title;
  std::string key;
  std::string file;
  if (f.experiment == "noise") {
    const auto variants = standard_noise_variants();
    rows = noise_experiment(data.history, data.truth, variants, config);
    title = "Sensitivity of data quality";
    key = "Variant";
    file = "noise.csv";
  } else {
    rows = size_experiment(data.history, data.truth, f.sizes, config);
    title = "Sensitivity of data size";
    key = "Size";
    file = "size.csv";
  }
  write_file(dir / "report.txt", sensitivity_report(header, title, rows));
  write_file(dir / file, sensitivity_csv(header, key, rows));
  for (const auto& r : rows) {
    out << r.label << ": macro F1 " << display_metric(r.result.metrics.macro.f1) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- compare

int cmd_compare(const PipelineFlags& f, std::ostream& out) {
  const auto config = f.config();
  const auto data = load_pair(f);
  RunHeader header("compare", "all", f.seed);
  f.record(header);

  const std::vector<std::pair<std::string, PipelineMode>> methods{
      {"Classification", PipelineMode::Classification},
      {"One-time prediction", PipelineMode::PredictOneTime},
      {"Long-term prediction", PipelineMode::PredictLongTerm},
      {"Weibull", PipelineMode::Weibull}};
  std::vector<PipelineResult> results;
  for (const auto& [name, mode] : methods) {
    results.push_back(run_pipeline(data.history, data.truth, mode, config));
  }

  std::ostringstream table;
  std::ostringstream csv;
  table << header.text("# ") << '\n'
        << "Method                 Precision  Recall  F1-Score\n";
  csv << header.text("# ") << "Method,Precision,Recall,F1,TP,FN,FP,TN\n";
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const auto& m = results[i].metrics.macro;
    const auto& cm = results[i].confusion;
    std::string label = methods[i].first;
    label.resize(22, ' ');
    table << label << ' ' << display_metric(m.precision) << "       " << display_metric(m.recall)
          << "    " << display_metric(m.f1) << '\n';
    csv << methods[i].first << ',' << text::format_real(m.precision) << ','
        << text::format_real(m.recall) << ',' << text::format_real(m.f1) << ',' << cm.tp << ','
        << cm.fn << ',' << cm.fp << ',' << cm.tn << '\n';
  }
  table << '\n';
  for (std::size_t i = 0; i < methods.size(); ++i) {
    table << methods[i].first << '\n' << format_confusion_matrix(results[i].confusion) << '\n';
  }
  table << weibull_section(*results.back().weibull, !f.unconditional);

  const auto dir = prepare_out(f.out);
  write_file(dir / "comparison.txt", table.str());
  write_file(dir / "comparison.csv", csv.str());
  write_file(dir / "weibull_curve.csv", weibull_curve(*results.back().weibull, data.history));
  for (std::size_t i = 0; i < methods.size(); ++i) {
    out << methods[i].first << ": macro F1 " << display_metric(results[i].metrics.macro.f1) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- synthesize

struct SynthesizeFlags {
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<std::size_t> assets;
};

int cmd_synthesize(const SynthesizeFlags& f, std::ostream& out) {
  auto cfg = load_fleet_config(f.config);
  cfg.seed = f.seed;
  if (f.assets) cfg.assets = *f.assets;
  const auto fleet = generate_fleet(cfg);
  const auto dir = prepare_out(f.out);
  save_dataset(dir / "history.csv", fleet.history);
  save_dataset(dir / "truth.csv", fleet.truth);
  write_file(dir / "schema.json", schema_to_json(fleet.history.schema));
  write_file(dir / "fleet.json", fleet_config_to_json(cfg));
  std::size_t failed = 0;
  for (const auto& r : fleet.truth.records) failed += r.status == Status::Failed ? 1 : 0;
  out << "synthesized " << cfg.assets << " assets, " << fleet.history.size()
      << " history rows, " << failed << " failed at the truth year\n";
  return kExitOk;
}

// ---------------------------------------------------------------- validate

struct ValidateFlags {
  std::string data;
  std::string schema;
};

int cmd_validate(const ValidateFlags& f, std::ostream& out) {
  const auto schema = load_schema(f.schema);
  const auto data = load_auto(f.data, schema);
  const auto warnings = validate_dataset(data);
  out << data.size() << " records (" << to_string(data.kind) << "), " << warnings.size()
      << " warnings\n"
      << warning_lines(warnings);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conditional-age failure prediction for power-grid assets", "condage"};
  app.set_version_flag("--version", CONDAGE_VERSION);
  app.require_subcommand(1);

  LearnFlags learn;
  auto* learn_cmd = app.add_subcommand("learn", "cluster conditions and train the classifier");
  learn_cmd->add_option("--data", learn.data, "training CSV")->required();
  learn_cmd->add_option("--schema", learn.schema, "feature schema JSON")->required();
  learn_cmd->add_option("--k-range", learn.k_range, "candidate K values, A..B");
  learn_cmd->add_option("--seed", learn.seed, "random seed")->required();
  learn_cmd->add_option("--out", learn.out, "output directory")->required();
  learn_cmd->add_option("--restarts", learn.restarts, "k-means restarts")->check(CLI::PositiveNumber);
  learn_cmd->add_option("--train-ratio", learn.train_ratio, "training fraction")
      ->check(CLI::Range(0.0, 1.0));
  learn_cmd->add_flag("--drop-outliers", learn.drop, "drop rows outside the 3 IQR fences");

  PredictFlags predict;
  auto* predict_cmd = app.add_subcommand("predict", "predict conditional ages and statuses");
  predict_cmd->add_option("--model", predict.model, "model.json from learn")->required();
  predict_cmd->add_option("--data", predict.data, "asset CSV")->required();
  predict_cmd->add_option("--horizon", predict.horizon, "years ahead")->required();
  predict_cmd->add_option("--mode", predict.mode, "one-time or long-term");
  predict_cmd->add_option("--similars", predict.similars, "similar assets")->check(CLI::PositiveNumber);
  predict_cmd->add_option("--threshold", predict.threshold, "failure probability threshold")
      ->check(CLI::Range(0.0, 1.0));
  predict_cmd->add_option("--out", predict.out, "output directory")->required();

  EvaluateFlags evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "run one evaluation experiment");
  evaluate.bind(*evaluate_cmd);
  evaluate_cmd->add_option("--experiment", evaluate.experiment,
                           "classification, predict-one-time, predict-long-term, weibull, "
                           "noise or size");
  evaluate_cmd->add_option("--sizes", evaluate.sizes, "asset counts for the size experiment")
      ->delimiter(',');

  PipelineFlags compare;
  auto* compare_cmd = app.add_subcommand("compare", "all methods on one split");
  compare.bind(*compare_cmd);

  SynthesizeFlags synth;
  auto* synth_cmd = app.add_subcommand("synthesize", "generate a synthetic fleet");
  synth_cmd->add_option("--config", synth.config, "fleet config JSON")->required();
  synth_cmd->add_option("--seed", synth.seed, "random seed")->required();
  synth_cmd->add_option("--out", synth.out, "output directory")->required();
  synth_cmd->add_option("--assets", synth.assets, "override the fleet size");

  ValidateFlags validate;
  auto* validate_cmd = app.add_subcommand("validate", "check a dataset against a schema");
  validate_cmd->add_option("--data", validate.data, "CSV file")->required();
  validate_cmd->add_option("--schema", validate.schema, "feature schema JSON")->required();

  std::vector<const char*> argv{"condage"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (learn_cmd->parsed()) return cmd_learn(learn, out);
    if (predict_cmd->parsed()) return cmd_predict(predict, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate, out);
    if (compare_cmd->parsed()) return cmd_compare(compare, out);
    if (synth_cmd->parsed()) return cmd_synthesize(synth, out);
    if (validate_cmd->parsed()) return cmd_validate(validate, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace condage::cli
