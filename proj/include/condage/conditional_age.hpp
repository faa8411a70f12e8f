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
#include <span>
#include <string>
#include <vector>

#include "condage/asset_data.hpp"
#include "condage/clustering.hpp"
#include "condage/feature_space.hpp"

namespace condage {

/// Squared-distance radius within which an asset is taken to sit on a centroid.
inline constexpr double kCentroidEpsilon = 1e-12;

struct AgedClusterModel {
  ClusterModel base;
  std::vector<double> conditional_ages;  // mean physical age of each cluster's members
  NormalizationParams normalization;
};

/// Cluster conditional age = mean physical age over all members, working and
/// failed alike. `physical_ages` is aligned with model.assignment.
AgedClusterModel compute_cluster_ages(const ClusterModel& model,
                                      std::span<const double> physical_ages,
                                      NormalizationParams normalization);
AgedClusterModel compute_cluster_ages(const ClusterModel& model, const Dataset& records,
                                      NormalizationParams normalization);

/// Inverse-distance weighted mean of the cluster conditional ages. Returns
/// the nearest cluster's age exactly when x is within kCentroidEpsilon of it.
double asset_conditional_age(const EncodedPoint& x, const AgedClusterModel& aged,
                             const SpaceLayout& layout);

/// conditional / physical. Throws ZeroPhysicalAge when physical <= 0.
double aging_rate(double conditional_age, double physical_age);

/// Constant-rate projection rate * (physical + horizon).
double project_one_time(double rate, double physical_age, double horizon);

/// future_rate * (physical + horizon).
double project_long_term(double future_rate, double physical_age, double horizon);

struct InterpolatedRate {
  double rate = 0.0;
  bool extrapolated = false;  // desired interval beyond the observed one
};

/// Linear interpolation of a rate observed over `observed` years to a
/// `desired` interval. Throws ZeroObservedInterval when observed <= 0.
InterpolatedRate interpolate_rate(double initial_rate, double later_rate, double observed,
                                  double desired);

struct RatePair {
  double initial = 0.0;  // R_i at the earliest inspection
  double later = 0.0;    // R_i^T after the horizon
};

/// rate * mean(later / initial) over the similar assets.
double project_rate_long_term(double rate, std::span<const RatePair> similars);

/// Earliest-to-latest aging record of one historical asset.
struct AgingTrajectory {
  std::string asset_id;
  EncodedPoint initial_point;
  double initial_age = 0.0;
  double later_age = 0.0;
  double initial_rate = 0.0;
  double later_rate = 0.0;
  double span_years = 0.0;
};

/// Trajectories of every asset with at least two inspections and positive
/// ages at both ends. Conditional ages come from `aged`.
std::vector<AgingTrajectory> build_trajectories(const Dataset& history,
                                                const AgedClusterModel& aged,
                                                const SpaceLayout& layout);

/// Min/max physical age over every history record, for scaling the age axis
/// of the similarity search.
FeatureRange history_age_range(const Dataset& history);

struct SimilarAsset {
  std::size_t trajectory = 0;  // index into the candidate list
  double distance = 0.0;
};

/// The n candidates closest to the target in encoded-condition space extended
/// by one min-max scaled physical-age slot of weight 1. Sorted ascending,
/// ties in candidate order. Throws InsufficientHistory with fewer than n.
std::vector<SimilarAsset> find_similar_assets(const EncodedPoint& target, double target_age,
                                              std::span<const AgingTrajectory> candidates,
                                              const FeatureRange& age_range,
                                              const SpaceLayout& layout, std::size_t n);

struct LongTermProjection {
  double rate = 0.0;
  double future_rate = 0.0;
  double future_conditional_age = 0.0;
  std::size_t extrapolated = 0;  // similars whose span was shorter than the horizon
};

/// Rates of the selected similars are brought to `horizon` years with
/// interpolate_rate when their observed span differs, then combined.
LongTermProjection project_from_similars(double rate, double physical_age, double horizon,
                                         std::span<const AgingTrajectory> candidates,
                                         std::span<const SimilarAsset> similars);

}  // namespace condage
