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

#include "condage/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>

#include "condage/error.hpp"
#include "condage/kernels.hpp"

namespace condage {

namespace {

std::mt19937_64 restart_engine(std::uint64_t seed, std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), 0x6b6d65u};
  return std::mt19937_64(seq);
}

// D^2-weighted seeding over distinct data points.
std::vector<EncodedPoint> seed_centroids(std::span<const EncodedPoint> points, std::size_t k,
                                         const SpaceLayout& layout, std::mt19937_64& rng) {
  std::vector<EncodedPoint> centroids;
  centroids.reserve(k);
  std::uniform_int_distribution<std::size_t> first(0, points.size() - 1);
  centroids.push_back(points[first(rng)]);
  std::vector<double> nearest(points.size(), std::numeric_limits<double>::infinity());
  while (centroids.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      nearest[i] = std::min(nearest[i], distance_unchecked(points[i], centroids.back(), layout));
      total += nearest[i];
    }
    std::uniform_real_distribution<double> pick(0.0, total);
    const double target = pick(rng);
    std::size_t chosen = points.size();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (nearest[i] <= 0.0) continue;
      chosen = i;
      cumulative += nearest[i];
      if (cumulative > target) break;
    }
    centroids.push_back(points[chosen]);
  }
  return centroids;
}

// Moves the farthest point of a multi-member cluster into each empty cluster.
void repair_empty_clusters(std::vector<std::size_t>& assignment, std::vector<double>& dist,
                           std::size_t k) {
  std::vector<std::size_t> counts(k, 0);
  for (const auto c : assignment) ++counts[c];
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] != 0) continue;
    std::size_t far = assignment.size();
    double far_d = -1.0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      if (counts[assignment[i]] > 1 && dist[i] > far_d) {
        far_d = dist[i];
        far = i;
      }
    }
    --counts[assignment[far]];
    assignment[far] = c;
    counts[c] = 1;
    dist[far] = 0.0;
  }
}

std::vector<EncodedPoint> update_centroids(std::span<const EncodedPoint> points,
                                           std::span<const std::size_t> assignment,
                                           std::size_t k, const SpaceLayout& layout) {
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < assignment.size(); ++i) members[assignment[i]].push_back(i);
  std::vector<EncodedPoint> centroids;
  centroids.reserve(k);
  for (const auto& m : members) centroids.push_back(cluster_center(points, m, layout));
  return centroids;
}

double max_shift(const std::vector<EncodedPoint>& before, const std::vector<EncodedPoint>& after) {
  double shift = 0.0;
  for (std::size_t c = 0; c < before.size(); ++c) {
    if (before[c].categorical != after[c].categorical) {
      return std::numeric_limits<double>::infinity();
    }
    for (std::size_t j = 0; j < before[c].numeric.size(); ++j) {
      shift = std::max(shift, std::abs(before[c].numeric[j] - after[c].numeric[j]));
    }
  }
  return shift;
}

}  // namespace

double compute_inertia(std::span<const EncodedPoint> points, const ClusterModel& model,
                       const SpaceLayout& layout) {
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += distance(points[i], model.centroids[model.assignment[i]], layout);
  }
  return total;
}

std::size_t count_distinct(std::span<const EncodedPoint> points) {
  std::vector<EncodedPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

EncodedPoint cluster_center(std::span<const EncodedPoint> points,
                            std::span<const std::size_t> members, const SpaceLayout& layout) {
  EncodedPoint center;
  center.numeric.assign(layout.p(), 0.0);
  center.categorical.assign(layout.q(), 0);
  if (members.empty()) return center;
  for (const auto i : members) {
    for (std::size_t j = 0; j < layout.p(); ++j) center.numeric[j] += points[i].numeric[j];
  }
  for (auto& v : center.numeric) v /= static_cast<double>(members.size());
  for (std::size_t j = 0; j < layout.q(); ++j) {
    std::vector<std::size_t> tally;
    for (const auto i : members) {
      const auto level = points[i].categorical[j];
      if (level >= tally.size()) tally.resize(level + 1, 0);
      ++tally[level];
    }
    center.categorical[j] =
        static_cast<std::size_t>(std::max_element(tally.begin(), tally.end()) - tally.begin());
  }
  return center;
}

KMeansRun kmeans_run(std::span<const EncodedPoint> points, std::size_t k,
                     const SpaceLayout& layout, std::uint64_t seed, int max_iters,
                     double tolerance) {
  auto rng = restart_engine(seed, 0);
  KMeansRun run;
  auto centroids = seed_centroids(points, k, layout, rng);
  std::vector<std::size_t> assignment(points.size());
  std::vector<double> dist(points.size());
  for (int iter = 0; iter < max_iters; ++iter) {
    kernels::assign_nearest(points, centroids, layout, assignment, dist);
    repair_empty_clusters(assignment, dist, k);
    auto updated = update_centroids(points, assignment, k, layout);
    const double shift = max_shift(centroids, updated);
    centroids = std::move(updated);
    run.iterations = iter + 1;
    double objective = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      objective += distance_unchecked(points[i], centroids[assignment[i]], layout);
    }
    run.inertia_history.push_back(objective);
    if (shift < tolerance) {
      run.converged = true;
      break;
    }
  }
  auto& model = run.model;
  model.k = k;
  model.centroids = std::move(centroids);
  model.assignment = std::move(assignment);
  model.member_counts.assign(k, 0);
  for (const auto c : model.assignment) ++model.member_counts[c];
  model.inertia = run.inertia_history.empty() ? 0.0 : run.inertia_history.back();
  return run;
}

ClusterModel kmeans(std::span<const EncodedPoint> points, std::size_t k, const KMeansConfig& cfg,
                    const SpaceLayout& layout) {
  if (k == 0) throw Error(ErrorCode::InvalidRange, "k must be at least 1");
  const auto distinct = count_distinct(points);
  if (k > distinct) {
    throw Error(ErrorCode::TooFewPoints, "k = " + std::to_string(k) + " exceeds " +
                                             std::to_string(distinct) + " distinct points");
  }
  if (cfg.restarts < 1 || cfg.max_iters < 1) {
    throw Error(ErrorCode::InvalidArgument, "restarts and max_iters must be positive");
  }
  std::optional<ClusterModel> best;
  for (int r = 0; r < cfg.restarts; ++r) {
    auto engine = restart_engine(cfg.seed, static_cast<std::uint64_t>(r) + 1);
    auto run = kmeans_run(points, k, layout, engine(), cfg.max_iters, cfg.tolerance);
    if (!best || run.model.inertia < best->inertia) best = std::move(run.model);
  }
  return std::move(*best);
}

SilhouetteReport silhouette(std::span<const EncodedPoint> points, const ClusterModel& model,
                            const SpaceLayout& layout) {
  if (model.k < 2) throw Error(ErrorCode::SingleCluster, "silhouette needs at least two clusters");
  SilhouetteReport report;
  const auto n = points.size();
  report.per_point.resize(n);
  report.a.resize(n);
  report.b.resize(n);
  kernels::silhouette_terms(points, model.assignment, model.k, layout, report.a, report.b,
                            report.per_point);
  report.average = n == 0 ? 0.0
                          : std::accumulate(report.per_point.begin(), report.per_point.end(), 0.0) /
                                static_cast<double>(n);
  return report;
}

KSelection select_k(std::span<const EncodedPoint> points, std::size_t k_min, std::size_t k_max,
                    const KMeansConfig& cfg, const SpaceLayout& layout) {
  const auto distinct = count_distinct(points);
  if (k_min < 2 || k_min > k_max || k_max > distinct) {
    throw Error(ErrorCode::InvalidRange, "k range " + std::to_string(k_min) + ".." +
                                             std::to_string(k_max) + " not within [2, " +
                                             std::to_string(distinct) + "]");
  }
  KSelection selection;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t k = k_min; k <= k_max; ++k) {
    auto model = kmeans(points, k, cfg, layout);
    const auto report = silhouette(points, model, layout);
    selection.sweep.push_back({k, report.average, model.inertia});
    if (report.average > best_score) {
      best_score = report.average;
      selection.best_k = k;
      selection.model = std::move(model);
    }
  }
  return selection;
}

}  // namespace condage
