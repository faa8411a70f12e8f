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
#include <vector>

#include "condage/feature_space.hpp"

namespace condage {

struct KMeansConfig {
  std::uint64_t seed;  // required, no default
  int restarts = 10;
  int max_iters = 300;
  double tolerance = 1e-9;  // max centroid coordinate shift
};

struct ClusterModel {
  std::size_t k = 0;
  std::vector<EncodedPoint> centroids;
  std::vector<std::size_t> assignment;  // record index -> cluster index
  double inertia = 0.0;
  std::vector<std::size_t> member_counts;
};

/// Sum over records of distance(x, centroid of its cluster).
double compute_inertia(std::span<const EncodedPoint> points, const ClusterModel& model,
                       const SpaceLayout& layout);

std::size_t count_distinct(std::span<const EncodedPoint> points);

/// Mean of numeric slots and mode of categorical slots (ties to the lowest
/// level index) over the given members.
EncodedPoint cluster_center(std::span<const EncodedPoint> points,
                            std::span<const std::size_t> members, const SpaceLayout& layout);

struct KMeansRun {
  ClusterModel model;
  std::vector<double> inertia_history;  // objective after each update step
  int iterations = 0;
  bool converged = false;
};

/// One Lloyd run from a D^2-weighted seeding drawn with `seed`.
KMeansRun kmeans_run(std::span<const EncodedPoint> points, std::size_t k,
                     const SpaceLayout& layout, std::uint64_t seed, int max_iters,
                     double tolerance);

/// Best of cfg.restarts independent runs (lowest inertia, earliest restart on
/// ties). Throws TooFewPoints when k exceeds the number of distinct points.
ClusterModel kmeans(std::span<const EncodedPoint> points, std::size_t k, const KMeansConfig& cfg,
                    const SpaceLayout& layout);

struct SilhouetteReport {
  std::vector<double> per_point;
  std::vector<double> a;
  std::vector<double> b;
  double average = 0.0;
};

/// Throws SingleCluster when model.k < 2.
SilhouetteReport silhouette(std::span<const EncodedPoint> points, const ClusterModel& model,
                            const SpaceLayout& layout);

struct KSweepEntry {
  std::size_t k = 0;
  double silhouette = 0.0;
  double inertia = 0.0;
};

struct KSelection {
  std::size_t best_k = 0;
  ClusterModel model;
  std::vector<KSweepEntry> sweep;
};

/// Runs kmeans and silhouette for every k in [k_min, k_max] and keeps the
/// largest average silhouette, ties going to the smaller k.
KSelection select_k(std::span<const EncodedPoint> points, std::size_t k_min, std::size_t k_max,
                    const KMeansConfig& cfg, const SpaceLayout& layout);

}  // namespace condage
