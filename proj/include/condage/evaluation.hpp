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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "condage/asset_data.hpp"

namespace condage {

/// Positive class is Failed.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  void add(Status actual, Status predicted);

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricsReport {
  ClassMetrics failed;
  ClassMetrics working;
  ClassMetrics macro;  // unweighted mean of the unrounded per-class values
  // Names of metrics whose denominator was zero (reported as 0).
  std::vector<std::string> undefined;
};

MetricsReport compute_metrics(const ConfusionMatrix& cm);

/// Round half up to `decimals` places; exact ratios such as 0.845 go up.
double round_half_up(double value, int decimals = 2);

/// Two-decimal display string, e.g. "0.93".
std::string display_metric(double value);

/// Rows of the paper-style table: Failed, Working, Average.
std::string format_metrics_table(const MetricsReport& report);
std::string format_confusion_matrix(const ConfusionMatrix& cm);

struct SplitIndices {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

/// Per-status seeded shuffle; each status contributes round(ratio * count)
/// members to train. Throws TooFewPerClass when a status has fewer than 5
/// members or would leave train or test without it.
SplitIndices stratified_split(std::span<const Status> labels, double ratio, std::uint64_t seed);

struct DatasetSplit {
  Dataset train;
  Dataset test;
};

DatasetSplit split_dataset(const Dataset& d, double ratio, std::uint64_t seed);

}  // namespace condage
