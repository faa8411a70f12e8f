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

#include "condage/conditional_age.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "condage/error.hpp"

namespace condage {

AgedClusterModel compute_cluster_ages(const ClusterModel& model,
                                      std::span<const double> physical_ages,
                                      NormalizationParams normalization) {
  if (physical_ages.size() != model.assignment.size()) {
    throw Error(ErrorCode::SchemaMismatch, "ages do not cover the clustered records");
  }
  std::vector<double> sums(model.k, 0.0);
  std::vector<std::size_t> counts(model.k, 0);
  for (std::size_t i = 0; i < physical_ages.size(); ++i) {
    sums[model.assignment[i]] += physical_ages[i];
    ++counts[model.assignment[i]];
  }
  AgedClusterModel aged{model, {}, std::move(normalization)};
  aged.conditional_ages.reserve(model.k);
  for (std::size_t c = 0; c < model.k; ++c) {
    aged.conditional_ages.push_back(counts[c] == 0 ? 0.0 : sums[c] / static_cast<double>(counts[c]));
  }
  return aged;
}

AgedClusterModel compute_cluster_ages(const ClusterModel& model, const Dataset& records,
                                      NormalizationParams normalization) {
  std::vector<double> ages;
  ages.reserve(records.size());
  for (const auto& r : records.records) ages.push_back(r.physical_age);
  return compute_cluster_ages(model, ages, std::move(normalization));
}

double asset_conditional_age(const EncodedPoint& x, const AgedClusterModel& aged,
                             const SpaceLayout& layout) {
  const auto& centroids = aged.base.centroids;
  std::vector<double> d(centroids.size());
  std::size_t nearest = 0;
  for (std::size_t j = 0; j < centroids.size(); ++j) {
    d[j] = distance(x, centroids[j], layout);
    if (d[j] < d[nearest]) nearest = j;
  }
  if (d[nearest] < kCentroidEpsilon) return aged.conditional_ages[nearest];
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < centroids.size(); ++j) {
    weighted += aged.conditional_ages[j] / d[j];
    total += 1.0 / d[j];
  }
  return weighted / total;
}

double aging_rate(double conditional_age, double physical_age) {
  if (!(physical_age > 0.0)) {
    throw Error(ErrorCode::ZeroPhysicalAge, "aging rate needs a positive physical age");
  }
  return conditional_age / physical_age;
}

double project_one_time(double rate, double physical_age, double horizon) {
  if (horizon < 0.0) throw Error(ErrorCode::InvalidArgument, "horizon must be non-negative");
  return rate * (physical_age + horizon);
}

double project_long_term(double future_rate, double physical_age, double horizon) {
  if (horizon < 0.0) throw Error(ErrorCode::InvalidArgument, "horizon must be non-negative");
  return future_rate * (physical_age + horizon);
}

InterpolatedRate interpolate_rate(double initial_rate, double later_rate, double observed,
                                  double desired) {
  if (!(observed > 0.0)) {
    throw Error(ErrorCode::ZeroObservedInterval, "observed interval must be positive");
  }
  if (desired < 0.0) throw Error(ErrorCode::InvalidArgument, "desired interval must be non-negative");
  return {initial_rate + (later_rate - initial_rate) * desired / observed, desired > observed};
}

double project_rate_long_term(double rate, std::span<const RatePair> similars) {
  if (similars.empty()) throw Error(ErrorCode::EmptySimilars, "no similar assets");
  double ratio_sum = 0.0;
  for (const auto& s : similars) {
    if (!(s.initial > 0.0)) throw Error(ErrorCode::ZeroBaseRate, "similar asset with rate <= 0");
    ratio_sum += s.later / s.initial;
  }
  return rate * ratio_sum / static_cast<double>(similars.size());
}

std::vector<AgingTrajectory> build_trajectories(const Dataset& history,
                                                const AgedClusterModel& aged,
                                                const SpaceLayout& layout) {
  std::vector<AgingTrajectory> out;
  for (const auto& group : group_by_asset(history)) {
    if (group.rows.size() < 2) continue;
    const auto& first = history.records[group.rows.front()];
    const auto& last = history.records[group.rows.back()];
    if (!(first.physical_age > 0.0) || !(last.physical_age > 0.0)) continue;
    if (!first.inspection_year || !last.inspection_year) continue;
    const double span = static_cast<double>(*last.inspection_year - *first.inspection_year);
    if (!(span > 0.0)) continue;
    AgingTrajectory t;
    t.asset_id = group.asset_id;
    t.initial_point = encode(first, history.schema, aged.normalization);
    const auto later_point = encode(last, history.schema, aged.normalization);
    t.initial_age = first.physical_age;
    t.later_age = last.physical_age;
    t.initial_rate = asset_conditional_age(t.initial_point, aged, layout) / t.initial_age;
    t.later_rate = asset_conditional_age(later_point, aged, layout) / t.later_age;
    t.span_years = span;
    if (!(t.initial_rate > 0.0)) continue;
    out.push_back(std::move(t));
  }
  return out;
}

FeatureRange history_age_range(const Dataset& history) {
  if (history.empty()) throw Error(ErrorCode::EmptyDataset, "history has no records");
  FeatureRange range{history.records.front().physical_age, history.records.front().physical_age};
  for (const auto& r : history.records) {
    range.min = std::min(range.min, r.physical_age);
    range.max = std::max(range.max, r.physical_age);
  }
  return range;
}

std::vector<SimilarAsset> find_similar_assets(const EncodedPoint& target, double target_age,
                                              std::span<const AgingTrajectory> candidates,
                                              const FeatureRange& age_range,
                                              const SpaceLayout& layout, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "similar-asset count must be positive");
  if (candidates.size() < n) {
    throw Error(ErrorCode::InsufficientHistory,
                std::to_string(candidates.size()) + " qualifying assets, " + std::to_string(n) +
                    " requested");
  }
  const double target_scaled = normalize(target_age, age_range);
  std::vector<SimilarAsset> ranked;
  ranked.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double age_diff = target_scaled - normalize(candidates[i].initial_age, age_range);
    ranked.push_back({i, distance(target, candidates[i].initial_point, layout) + age_diff * age_diff});
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const SimilarAsset& a, const SimilarAsset& b) {
    return a.distance < b.distance;
  });
  ranked.resize(n);
  return ranked;
}

LongTermProjection project_from_similars(double rate, double physical_age, double horizon,
                                         std::span<const AgingTrajectory> candidates,
                                         std::span<const SimilarAsset> similars) {
  LongTermProjection projection;
  projection.rate = rate;
  std::vector<RatePair> pairs;
  pairs.reserve(similars.size());
  for (const auto& s : similars) {
    const auto& t = candidates[s.trajectory];
    RatePair pair{t.initial_rate, t.later_rate};
    if (t.span_years != horizon) {
      const auto interp = interpolate_rate(t.initial_rate, t.later_rate, t.span_years, horizon);
      pair.later = interp.rate;
      if (interp.extrapolated) ++projection.extrapolated;
    }
    pairs.push_back(pair);
  }
  projection.future_rate = project_rate_long_term(rate, pairs);
  projection.future_conditional_age = project_long_term(projection.future_rate, physical_age, horizon);
  return projection;
}

}  // namespace condage
