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

#include "condage/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "condage/error.hpp"
#include "condage/seed.hpp"

namespace condage {

namespace {

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

bool same_record_key(const AssetRecord& a, const AssetRecord& b) {
  return a.asset_id == b.asset_id && a.inspection_year == b.inspection_year;
}

}  // namespace

ConditionModel learn_condition_model(const Dataset& records, const ClusteringOptions& options,
                                     std::uint64_t seed) {
  auto normalization = fit_normalization(records);
  ConditionModel model;
  model.schema = records.schema;
  model.layout = SpaceLayout::from_schema(records.schema);
  const auto points = encode_all(records, normalization);
  const std::size_t k_max = std::min(options.k_max, count_distinct(points));
  const KMeansConfig cfg{seed, options.restarts, options.max_iters, options.tolerance};
  auto selection = select_k(points, options.k_min, k_max, cfg, model.layout);
  model.sweep = std::move(selection.sweep);
  model.aged = compute_cluster_ages(selection.model, records, std::move(normalization));
  return model;
}

double conditional_age_of(const ConditionModel& model, const AssetRecord& record,
                          EncodeStats* stats) {
  const auto point = encode(record, model.schema, model.aged.normalization, stats);
  return asset_conditional_age(point, model.aged, model.layout);
}

std::vector<LabeledExample> labeled_examples(const ConditionModel& model, const Dataset& records) {
  std::vector<LabeledExample> out;
  out.reserve(records.size());
  for (const auto& r : records.records) {
    out.push_back({r.physical_age, conditional_age_of(model, r), r.status});
  }
  return out;
}

AssetPrediction predict_one_time(const ConditionModel& model, const LogisticModel& classifier,
                                 const AssetRecord& record, double horizon, double threshold) {
  AssetPrediction p;
  p.asset_id = record.asset_id;
  p.physical_age = record.physical_age;
  p.horizon = horizon;
  p.conditional_age_now = conditional_age_of(model, record);
  p.aging_rate = aging_rate(p.conditional_age_now, p.physical_age);
  p.future_conditional_age = project_one_time(p.aging_rate, p.physical_age, horizon);
  p.probability = predict_probability(classifier, p.physical_age + horizon, p.future_conditional_age);
  p.predicted = classify(classifier, p.physical_age + horizon, p.future_conditional_age, threshold);
  return p;
}

AssetPrediction predict_long_term(const ConditionModel& model, const LogisticModel& classifier,
                                  const AssetRecord& record, double horizon,
                                  std::span<const AgingTrajectory> candidates,
                                  const FeatureRange& age_range, std::size_t similars,
                                  double threshold) {
  AssetPrediction p;
  p.asset_id = record.asset_id;
  p.physical_age = record.physical_age;
  p.horizon = horizon;
  const auto point = encode(record, model.schema, model.aged.normalization);
  p.conditional_age_now = asset_conditional_age(point, model.aged, model.layout);
  p.aging_rate = aging_rate(p.conditional_age_now, p.physical_age);
  const auto nearest =
      find_similar_assets(point, p.physical_age, candidates, age_range, model.layout, similars);
  const auto projection =
      project_from_similars(p.aging_rate, p.physical_age, horizon, candidates, nearest);
  p.future_aging_rate = projection.future_rate;
  p.future_conditional_age = projection.future_conditional_age;
  p.probability = predict_probability(classifier, p.physical_age + horizon, p.future_conditional_age);
  p.predicted = classify(classifier, p.physical_age + horizon, p.future_conditional_age, threshold);
  return p;
}

std::string_view to_string(PipelineMode mode) {
  switch (mode) {
    case PipelineMode::Classification: return "classification";
    case PipelineMode::PredictOneTime: return "predict-one-time";
    case PipelineMode::PredictLongTerm: return "predict-long-term";
    case PipelineMode::Weibull: return "weibull";
  }
  return "classification";
}

std::optional<PipelineMode> parse_pipeline_mode(std::string_view text) {
  for (const auto mode : {PipelineMode::Classification, PipelineMode::PredictOneTime,
                          PipelineMode::PredictLongTerm, PipelineMode::Weibull}) {
    if (text == to_string(mode)) return mode;
  }
  return std::nullopt;
}

namespace {

// Base-year rows that have a truth row, paired with that row.
struct Pairing {
  Dataset base;
  Dataset truth;
  std::vector<std::size_t> eligible;  // indices into base
  std::unordered_map<std::string, std::size_t> truth_row;
};

Pairing pair_records(const Dataset& history, const Dataset& truth_future) {
  if (!(history.schema == truth_future.schema)) {
    throw Error(ErrorCode::SchemaMismatch, "history and truth use different schemas");
  }
  Pairing p{earliest_records(history), latest_records(truth_future), {}, {}};
  for (std::size_t i = 0; i < p.truth.size(); ++i) p.truth_row.emplace(p.truth.records[i].asset_id, i);
  for (std::size_t i = 0; i < p.base.size(); ++i) {
    if (p.truth_row.count(p.base.records[i].asset_id) != 0) p.eligible.push_back(i);
  }
  return p;
}

}  // namespace

AssetSplit pipeline_split(const Dataset& history, const Dataset& truth_future,
                          const PipelineConfig& config) {
  const auto p = pair_records(history, truth_future);
  std::vector<Status> labels;
  for (const auto i : p.eligible) {
    labels.push_back(p.truth.records[p.truth_row.at(p.base.records[i].asset_id)].status);
  }
  const auto split =
      stratified_split(labels, config.train_ratio, derive_seed(config.seed, streams::kSplit));
  AssetSplit out;
  for (const auto i : split.train) out.train.push_back(p.base.records[p.eligible[i]].asset_id);
  for (const auto i : split.test) out.test.push_back(p.base.records[p.eligible[i]].asset_id);
  return out;
}

PipelineResult run_pipeline(const Dataset& history, const Dataset& truth_future,
                            PipelineMode mode, const PipelineConfig& config) {
  return run_pipeline(history, truth_future, mode, config,
                      pipeline_split(history, truth_future, config));
}

PipelineResult run_pipeline(const Dataset& history, const Dataset& truth_future,
                            PipelineMode mode, const PipelineConfig& config,
                            const AssetSplit& assets) {
  if (mode == PipelineMode::PredictLongTerm && history.kind != DatasetKind::LongTerm) {
    throw Error(ErrorCode::ModeDataMismatch, "long-term prediction needs a long-term history");
  }
  const auto pairing = pair_records(history, truth_future);
  const auto& base = pairing.base;
  const auto& truth = pairing.truth;
  const auto& eligible = pairing.eligible;
  const auto& truth_row = pairing.truth_row;

  // Positions into `eligible`, in base order.
  struct {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
  } split;
  const std::unordered_set<std::string> train_ids(assets.train.begin(), assets.train.end());
  const std::unordered_set<std::string> test_ids(assets.test.begin(), assets.test.end());
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    const auto& id = base.records[eligible[i]].asset_id;
    if (train_ids.count(id) != 0) split.train.push_back(i);
    else if (test_ids.count(id) != 0) split.test.push_back(i);
  }

  Dataset train{base.schema, DatasetKind::OneTime, {}};
  for (const auto i : split.train) train.records.push_back(base.records[eligible[i]]);
  const auto& scored = config.score_on_training ? split.train : split.test;

  const auto horizon_of = [&](const AssetRecord& now, const AssetRecord& later) {
    if (config.horizon) return *config.horizon;
    if (!now.inspection_year || !later.inspection_year) {
      throw Error(ErrorCode::InvalidConfig, "no horizon given and records carry no inspection years");
    }
    return static_cast<double>(*later.inspection_year - *now.inspection_year);
  };

  PipelineResult result;
  result.mode = mode;
  result.train_assets = split.train.size();
  result.test_assets = scored.size();

  if (mode == PipelineMode::Weibull) {
    std::vector<double> ages;
    std::vector<Status> statuses;
    for (const auto& r : train.records) {
      ages.push_back(r.physical_age);
      statuses.push_back(r.status);
    }
    const auto model = fit_weibull(ages, statuses);
    for (const auto i : scored) {
      const auto& now = base.records[eligible[i]];
      const auto& later = truth.records[truth_row.at(now.asset_id)];
      const double horizon = horizon_of(now, later);
      const auto w = predict_weibull(model, now.physical_age, horizon, config.threshold,
                                     config.weibull_conditional);
      AssetPrediction p;
      p.asset_id = now.asset_id;
      p.physical_age = now.physical_age;
      p.horizon = horizon;
      p.probability = w.probability;
      p.predicted = w.status;
      result.confusion.add(later.status, p.predicted);
      result.predictions.push_back({std::move(p), later.status});
    }
    result.weibull = model;
    result.metrics = compute_metrics(result.confusion);
    return result;
  }

  auto condition = learn_condition_model(train, config.clustering,
                                         derive_seed(config.seed, streams::kClustering));
  const auto examples = labeled_examples(condition, train);
  const auto balanced = oversample(examples, derive_seed(config.seed, streams::kOversample));
  const auto classifier = train_logistic(balanced, config.logistic);

  std::vector<AgingTrajectory> candidates;
  FeatureRange age_range;
  if (mode == PipelineMode::PredictLongTerm) {
    std::vector<std::string> ids;
    for (const auto& r : train.records) ids.push_back(r.asset_id);
    const auto train_history = filter_assets(history, ids);
    candidates = build_trajectories(train_history, condition.aged, condition.layout);
    age_range = history_age_range(train_history);
  }

  for (const auto i : scored) {
    const auto& now = base.records[eligible[i]];
    const auto& later = truth.records[truth_row.at(now.asset_id)];
    AssetPrediction p;
    Status actual = later.status;
    switch (mode) {
      case PipelineMode::Classification: {
        actual = now.status;
        p.asset_id = now.asset_id;
        p.physical_age = now.physical_age;
        p.conditional_age_now = conditional_age_of(condition, now);
        p.aging_rate = now.physical_age > 0.0 ? p.conditional_age_now / now.physical_age : 0.0;
        p.future_conditional_age = p.conditional_age_now;
        p.probability = predict_probability(classifier, p.physical_age, p.conditional_age_now);
        p.predicted = classify(classifier, p.physical_age, p.conditional_age_now, config.threshold);
        break;
      }
      case PipelineMode::PredictOneTime:
        p = predict_one_time(condition, classifier, now, horizon_of(now, later), config.threshold);
        break;
      case PipelineMode::PredictLongTerm:
        p = predict_long_term(condition, classifier, now, horizon_of(now, later), candidates,
                              age_range, config.similars, config.threshold);
        break;
      case PipelineMode::Weibull:
        break;
    }
    result.confusion.add(actual, p.predicted);
    result.predictions.push_back({std::move(p), actual});
  }
  result.metrics = compute_metrics(result.confusion);
  result.condition_model = std::move(condition);
  result.classifier = classifier;
  return result;
}

std::string NoiseVariant::label() const {
  switch (kind) {
    case Kind::Clean: return "original";
    case Kind::SwapStatuses: return "swap-" + std::to_string(count) + "-statuses";
    case Kind::InflateFeatures: return "inflate-" + std::to_string(count) + "-features";
  }
  return "original";
}

std::vector<NoiseVariant> standard_noise_variants() {
  using K = NoiseVariant::Kind;
  return {{K::Clean, 0, 1.5},          {K::SwapStatuses, 5, 1.5},    {K::SwapStatuses, 10, 1.5},
          {K::InflateFeatures, 5, 1.5}, {K::InflateFeatures, 10, 1.5}};
}

NoisyData apply_noise(const Dataset& history, const Dataset& truth, const NoiseVariant& variant,
                      std::uint64_t seed) {
  NoisyData out{history, truth};
  if (variant.kind == NoiseVariant::Kind::Clean || variant.count == 0) return out;

  if (variant.kind == NoiseVariant::Kind::SwapStatuses) {
    const auto groups = group_by_asset(history);
    if (variant.count > groups.size()) {
      throw Error(ErrorCode::InvalidArgument, "more swaps requested than assets");
    }
    const auto order = seeded_permutation(groups.size(), seed);
    for (std::size_t s = 0; s < variant.count; ++s) {
      auto& rec = out.history.records[groups[order[s]].rows.back()];
      rec.status = flipped(rec.status);
      for (auto& t : out.truth.records) {
        if (same_record_key(t, rec)) t.status = rec.status;
      }
    }
    return out;
  }

  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t r = 0; r < history.size(); ++r) {
    for (std::size_t f = 0; f < history.schema.size(); ++f) {
      if (history.schema[f].kind == FeatureKind::Numeric) cells.emplace_back(r, f);
    }
  }
  if (variant.count > cells.size()) {
    throw Error(ErrorCode::InvalidArgument, "more inflated values requested than numeric cells");
  }
  const auto order = seeded_permutation(cells.size(), seed);
  for (std::size_t s = 0; s < variant.count; ++s) {
    const auto [r, f] = cells[order[s]];
    auto& rec = out.history.records[r];
    rec.values[f] = rec.numeric(f) * variant.factor;
    for (auto& t : out.truth.records) {
      if (same_record_key(t, rec)) t.values[f] = rec.values[f];
    }
  }
  return out;
}

std::vector<ExperimentRow> noise_experiment(const Dataset& history, const Dataset& truth,
                                            std::span<const NoiseVariant> variants,
                                            const PipelineConfig& config) {
  // One split from the clean data so every variant scores the same assets.
  const auto assets = pipeline_split(history, truth, config);
  std::vector<ExperimentRow> rows;
  for (const auto& v : variants) {
    const auto noisy = apply_noise(history, truth, v, derive_seed(config.seed, streams::kNoise));
    rows.push_back({v.label(), run_pipeline(noisy.history, noisy.truth,
                                            PipelineMode::PredictLongTerm, config, assets)});
  }
  return rows;
}

std::vector<ExperimentRow> size_experiment(const Dataset& history, const Dataset& truth,
                                           std::span<const std::size_t> sizes,
                                           const PipelineConfig& config) {
  const auto groups = group_by_asset(history);
  const auto order = seeded_permutation(groups.size(), derive_seed(config.seed, streams::kSubset));
  std::vector<ExperimentRow> rows;
  for (const auto size : sizes) {
    if (size > groups.size()) {
      throw Error(ErrorCode::InvalidArgument, "subset size " + std::to_string(size) +
                                                  " exceeds " + std::to_string(groups.size()) +
                                                  " assets");
    }
    std::vector<std::string> ids;
    for (std::size_t s = 0; s < size; ++s) ids.push_back(groups[order[s]].asset_id);
    rows.push_back({std::to_string(size),
                    run_pipeline(filter_assets(history, ids), filter_assets(truth, ids),
                                 PipelineMode::PredictLongTerm, config)});
  }
  return rows;
}

Dataset filter_assets(const Dataset& d, std::span<const std::string> asset_ids) {
  const std::unordered_set<std::string> keep(asset_ids.begin(), asset_ids.end());
  Dataset out{d.schema, d.kind, {}};
  for (const auto& r : d.records) {
    if (keep.count(r.asset_id) != 0) out.records.push_back(r);
  }
  return out;
}

}  // namespace condage
