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

#include <gtest/gtest.h>

#include <random>

#include "condage/clustering.hpp"
#include "condage/error.hpp"
#include "support/oracles.hpp"

namespace condage {
namespace {

std::vector<EncodedPoint> blobs(std::size_t per_blob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.02);
  const double centers[3][2] = {{0.1, 0.1}, {0.5, 0.9}, {0.9, 0.2}};
  std::vector<EncodedPoint> pts;
  for (std::size_t i = 0; i < per_blob; ++i) {
    for (const auto& c : centers) pts.push_back({{c[0] + noise(rng), c[1] + noise(rng)}, {}});
  }
  return pts;
}

TEST(Clustering, RecoversSeparatedBlobs) {
  const auto pts = blobs(30, 1);
  const auto layout = SpaceLayout::uniform(2, 0);
  const auto model = kmeans(pts, 3, {7}, layout);
  EXPECT_EQ(model.k, 3u);
  EXPECT_EQ(model.member_counts, (std::vector<std::size_t>(3, 30)));
  for (std::size_t i = 0; i < pts.size(); i += 3) {
    EXPECT_EQ(model.assignment[i], model.assignment[0]);
    EXPECT_NE(model.assignment[i + 1], model.assignment[i]);
  }
  EXPECT_NEAR(compute_inertia(pts, model, layout), model.inertia, 1e-12);
}

TEST(Clustering, DeterministicForSeed) {
  const auto pts = blobs(20, 2);
  const auto layout = SpaceLayout::uniform(2, 0);
  const auto a = kmeans(pts, 4, {99}, layout);
  const auto b = kmeans(pts, 4, {99}, layout);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.centroids, b.centroids);
  EXPECT_EQ(a.inertia, b.inertia);
}

TEST(Clustering, ObjectiveNeverIncreases) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> lvl(0, 2);
  std::vector<EncodedPoint> pts;
  for (int i = 0; i < 200; ++i) pts.push_back({{u(rng), u(rng)}, {lvl(rng)}});
  const auto layout = SpaceLayout::uniform(2, 1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto run = kmeans_run(pts, 5, layout, seed, 300, 1e-9);
    for (std::size_t i = 1; i < run.inertia_history.size(); ++i) {
      EXPECT_LE(run.inertia_history[i], run.inertia_history[i - 1] + 1e-12);
    }
  }
}

TEST(Clustering, CategoricalModeTiesGoToLowestLevel) {
  const std::vector<EncodedPoint> pts{{{0.0}, {2}}, {{1.0}, {1}}, {{0.5}, {2}}, {{0.5}, {1}}};
  const std::vector<std::size_t> members{0, 1, 2, 3};
  const auto c = cluster_center(pts, members, SpaceLayout::uniform(1, 1));
  EXPECT_DOUBLE_EQ(c.numeric[0], 0.5);
  EXPECT_EQ(c.categorical[0], 1u);
}

TEST(Clustering, RangeErrors) {
  const std::vector<EncodedPoint> pts{{{0.0}, {}}, {{0.0}, {}}, {{1.0}, {}}};
  const auto layout = SpaceLayout::uniform(1, 0);
  EXPECT_EQ(count_distinct(pts), 2u);
  EXPECT_THROW(kmeans(pts, 3, {1}, layout), Error);
  try {
    select_k(pts, 2, 3, {1}, layout);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidRange);
  }
  try {
    select_k(pts, 3, 2, {1}, layout);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidRange);
  }
}

TEST(Clustering, SilhouetteBoundsAndSingleCluster) {
  const auto pts = blobs(15, 3);
  const auto layout = SpaceLayout::uniform(2, 0);
  for (std::size_t k = 2; k <= 6; ++k) {
    const auto model = kmeans(pts, k, {k}, layout);
    const auto report = silhouette(pts, model, layout);
    for (const double s : report.per_point) {
      EXPECT_GE(s, -1.0);
      EXPECT_LE(s, 1.0);
    }
  }
  ClusterModel single;
  single.k = 1;
  single.assignment.assign(pts.size(), 0);
  EXPECT_THROW(silhouette(pts, single, layout), Error);
}

TEST(Clustering, SelectKPicksThreeBlobs) {
  const auto pts = blobs(25, 4);
  const auto selection = select_k(pts, 2, 6, {11}, SpaceLayout::uniform(2, 0));
  EXPECT_EQ(selection.best_k, 3u);
  ASSERT_EQ(selection.sweep.size(), 5u);
  EXPECT_EQ(selection.sweep.front().k, 2u);
}

TEST(Clustering, MatchesExhaustiveOptimumOnSmallInstance) {
  const std::vector<EncodedPoint> pts{{{0.0, 0.1}, {0}}, {{0.2, 0.0}, {1}}, {{0.9, 1.0}, {1}},
                                      {{1.0, 0.8}, {1}}, {{0.5, 0.5}, {0}}, {{0.4, 0.6}, {2}}};
  std::vector<testing::MixedPoint> mirror;
  for (const auto& p : pts) mirror.push_back({p.numeric, p.categorical});
  const auto layout = SpaceLayout::uniform(2, 1);
  for (std::size_t k = 1; k <= 3; ++k) {
    const double best = testing::exhaustive_min_inertia(mirror, k, {1.0, 1.0}, {1.0});
    const auto model = kmeans(pts, k, {k, 50}, layout);
    EXPECT_NEAR(model.inertia, best, 1e-9) << "k = " << k;
  }
}

}  // namespace
}  // namespace condage
