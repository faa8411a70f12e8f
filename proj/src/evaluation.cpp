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

#include "condage/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "condage/error.hpp"
#include "condage/text.hpp"

namespace condage {

namespace {

double ratio_or_zero(std::size_t num, std::size_t den, const char* name,
                     std::vector<std::string>& undefined) {
  if (den == 0) {
    undefined.emplace_back(name);
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double f1_of(double precision, double recall, const char* name,
             std::vector<std::string>& undefined) {
  if (precision + recall <= 0.0) {
    undefined.emplace_back(name);
    return 0.0;
  }
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

void ConfusionMatrix::add(Status actual, Status predicted) {
  if (actual == Status::Failed) {
    ++(predicted == Status::Failed ? tp : fn);
  } else {
    ++(predicted == Status::Failed ? fp : tn);
  }
}

MetricsReport compute_metrics(const ConfusionMatrix& cm) {
  MetricsReport r;
  r.failed.precision = ratio_or_zero(cm.tp, cm.tp + cm.fp, "failed.precision", r.undefined);
  r.failed.recall = ratio_or_zero(cm.tp, cm.tp + cm.fn, "failed.recall", r.undefined);
  r.failed.f1 = f1_of(r.failed.precision, r.failed.recall, "failed.f1", r.undefined);
  r.working.precision = ratio_or_zero(cm.tn, cm.tn + cm.fn, "working.precision", r.undefined);
  r.working.recall = ratio_or_zero(cm.tn, cm.tn + cm.fp, "working.recall", r.undefined);
  r.working.f1 = f1_of(r.working.precision, r.working.recall, "working.f1", r.undefined);
  r.macro.precision = 0.5 * (r.failed.precision + r.working.precision);
  r.macro.recall = 0.5 * (r.failed.recall + r.working.recall);
  r.macro.f1 = 0.5 * (r.failed.f1 + r.working.f1);
  return r;
}

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // The nudge absorbs binary representation error of exact decimal ties.
  return std::floor(value * scale + 0.5 + 1e-9) / scale;
}

std::string display_metric(double value) { return text::format_fixed(round_half_up(value, 2), 2); }

std::string format_metrics_table(const MetricsReport& report) {
  std::ostringstream out;
  const auto row = [&](const char* label, const ClassMetrics& m) {
    out << label << "  " << display_metric(m.precision) << "       " << display_metric(m.recall)
        << "    " << display_metric(m.f1) << '\n';
  };
  out << "Evaluation Category   Precision  Recall  F1-Score\n";
  row("Asset Failed Status ", report.failed);
  row("Asset Working Status", report.working);
  row("Average             ", report.macro);
  return out.str();
}

std::string format_confusion_matrix(const ConfusionMatrix& cm) {
  std::ostringstream out;
  out << "Total N=" << cm.total() << "            Predicted: Failed  Predicted: Working\n"
      << "Actual: Failed           TP=" << cm.tp << "  FN=" << cm.fn << '\n'
      << "Actual: Working          FP=" << cm.fp << "  TN=" << cm.tn << '\n';
  return out.str();
}

SplitIndices stratified_split(std::span<const Status> labels, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "split ratio must lie in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  SplitIndices out;
  for (const Status status : {Status::Failed, Status::Working}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == status) members.push_back(i);
    }
    if (members.size() < 5) {
      throw Error(ErrorCode::TooFewPerClass, std::string(to_string(status)) + ": " +
                                                 std::to_string(members.size()) +
                                                 " records, need at least 5");
    }
    std::shuffle(members.begin(), members.end(), rng);
    const auto n_train =
        static_cast<std::size_t>(std::lround(ratio * static_cast<double>(members.size())));
    if (n_train == 0 || n_train >= members.size()) {
      throw Error(ErrorCode::TooFewPerClass,
                  std::string(to_string(status)) + " would be missing from train or test");
    }
    out.train.insert(out.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test.insert(out.test.end(), members.begin() + static_cast<std::ptrdiff_t>(n_train), members.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

DatasetSplit split_dataset(const Dataset& d, double ratio, std::uint64_t seed) {
  std::vector<Status> labels;
  labels.reserve(d.size());
  for (const auto& r : d.records) labels.push_back(r.status);
  const auto idx = stratified_split(labels, ratio, seed);
  DatasetSplit out{{d.schema, d.kind, {}}, {d.schema, d.kind, {}}};
  for (const auto i : idx.train) out.train.records.push_back(d.records[i]);
  for (const auto i : idx.test) out.test.records.push_back(d.records[i]);
  return out;
}

}  // namespace condage
