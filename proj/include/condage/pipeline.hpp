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

// Learning process (cluster -> conditional ages -> classifier), prediction
// process (current and future conditional age -> status), and the
// experiment drivers built on them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "condage/asset_data.hpp"
#include "condage/clustering.hpp"
#include "condage/conditional_age.hpp"
#include "condage/evaluation.hpp"
#include "condage/failure_classifier.hpp"
#include "condage/feature_space.hpp"
#include "condage/weibull_baseline.hpp"

namespace condage {

/// Unsupervised half of the learning process.
struct ConditionModel {
  FeatureSchema schema;
  SpaceLayout layout;
  AgedClusterModel aged;  // carries the normalization
  std::vector<KSweepEntry> sweep;
};

struct ClusteringOptions {
  std::size_t k_min = 2;
  std::size_t k_max = 10;  // clipped to the number of distinct points
  int restarts = 10;
  int max_iters = 300;
  double tolerance = 1e-9;
};

/// Normalize, pick K by silhouette, and attach cluster conditional ages.
ConditionModel learn_condition_model(const Dataset& records, const ClusteringOptions& options,
                                     std::uint64_t seed);

/// Current conditional age of one record against a learned model.
double conditional_age_of(const ConditionModel& model, const AssetRecord& record,
                          EncodeStats* stats = nullptr);

std::vector<LabeledExample> labeled_examples(const ConditionModel& model, const Dataset& records);

struct AssetPrediction {
  std::string asset_id;
  double physical_age = 0.0;
  double conditional_age_now = 0.0;
  double aging_rate = 0.0;
  std::optional<double> future_aging_rate;  // long-term only
  double future_conditional_age = 0.0;
  double horizon = 0.0;
  double probability = 0.0;
  Status predicted = Status::Working;
};

AssetPrediction predict_one_time(const ConditionModel& model, const LogisticModel& classifier,
                                 const AssetRecord& record, double horizon,
                                 double threshold = 0.5);

/// `candidates` and `age_range` come from build_trajectories and
/// history_age_range over the historical assets.
AssetPrediction predict_long_term(const ConditionModel& model, const LogisticModel& classifier,
                                  const AssetRecord& record, double horizon,
                                  std::span<const AgingTrajectory> candidates,
                                  const FeatureRange& age_range, std::size_t similars,
                                  double threshold = 0.5);

enum class PipelineMode { Classification, PredictOneTime, PredictLongTerm, Weibull };

std::string_view to_string(PipelineMode mode);
std::optional<PipelineMode> parse_pipeline_mode(std::string_view text);

struct PipelineConfig {
  std::uint64_t seed;  // required
  double train_ratio = 0.8;
  ClusteringOptions clustering{};
  LogisticConfig logistic{};
  std::size_t similars = 5;
  std::optional<double> horizon{};  // default: truth year - base year per asset
  double threshold = 0.5;
  bool weibull_conditional = true;
  bool score_on_training = false;  // evaluate on the training assets instead
};

struct ScoredPrediction {
  AssetPrediction prediction;
  Status actual = Status::Working;
};

struct PipelineResult {
  PipelineMode mode = PipelineMode::Classification;
  ConfusionMatrix confusion;
  MetricsReport metrics;
  std::vector<ScoredPrediction> predictions;
  std::optional<ConditionModel> condition_model;
  std::optional<LogisticModel> classifier;
  std::optional<WeibullModel> weibull;
  std::size_t train_assets = 0;
  std::size_t test_assets = 0;
};

struct AssetSplit {
  std::vector<std::string> train;
  std::vector<std::string> test;
};

/// Stratified on the truth status of each asset that has both a history and
/// a truth record.
AssetSplit pipeline_split(const Dataset& history, const Dataset& truth_future,
                          const PipelineConfig& config);

/// Full learning process on the training split of the base-year records,
/// then the selected prediction path on the test split, scored against
/// `truth_future` (or the base-year statuses in Classification mode).
PipelineResult run_pipeline(const Dataset& history, const Dataset& truth_future,
                            PipelineMode mode, const PipelineConfig& config);
/// Same, with a fixed asset split; assets missing from either dataset are skipped.
PipelineResult run_pipeline(const Dataset& history, const Dataset& truth_future,
                            PipelineMode mode, const PipelineConfig& config,
                            const AssetSplit& assets);

struct NoiseVariant {
  enum class Kind { Clean, SwapStatuses, InflateFeatures };
  Kind kind = Kind::Clean;
  std::size_t count = 0;
  double factor = 1.5;

  std::string label() const;
};

/// Clean, swap 5, swap 10, inflate 5, inflate 10 (x1.5).
std::vector<NoiseVariant> standard_noise_variants();

struct NoisyData {
  Dataset history;
  Dataset truth;
};

/// Swaps flip Working/Failed on the most recent history row of `count`
/// seeded assets; inflation multiplies `count` seeded (record, numeric
/// feature) cells. The same edits are mirrored onto matching truth rows.
/// Larger counts extend the selection made for smaller ones.
NoisyData apply_noise(const Dataset& history, const Dataset& truth, const NoiseVariant& variant,
                      std::uint64_t seed);

struct ExperimentRow {
  std::string label;
  PipelineResult result;
};

/// Runs the long-term pipeline on every variant with the same pipeline seed
/// and the asset split of the clean data.
std::vector<ExperimentRow> noise_experiment(const Dataset& history, const Dataset& truth,
                                            std::span<const NoiseVariant> variants,
                                            const PipelineConfig& config);

/// Seeded nested asset subsets of each size, long-term pipeline on each.
std::vector<ExperimentRow> size_experiment(const Dataset& history, const Dataset& truth,
                                           std::span<const std::size_t> sizes,
                                           const PipelineConfig& config);

/// Keeps only the listed assets, preserving record order.
Dataset filter_assets(const Dataset& d, std::span<const std::string> asset_ids);

}  // namespace condage
