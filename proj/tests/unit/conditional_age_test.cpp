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

#include <cmath>

#include "condage/conditional_age.hpp"
#include "condage/error.hpp"

namespace condage {
namespace {

// Three unit-axis centroids under weights {1, 2, 4}: the origin sits at squared
// distances 1, 2 and 4 from them.
AgedClusterModel axis_model() {
  AgedClusterModel aged;
  aged.base.k = 3;
  aged.base.centroids = {{{1.0, 0.0, 0.0}, {}}, {{0.0, 1.0, 0.0}, {}}, {{0.0, 0.0, 1.0}, {}}};
  aged.conditional_ages = {10.0, 20.0, 40.0};
  return aged;
}

SpaceLayout axis_layout() {
  auto layout = SpaceLayout::uniform(3, 0);
  layout.numeric_weights = {1.0, 2.0, 4.0};
  return layout;
}

TEST(ConditionalAge, InverseDistanceWeighting) {
  const double value = asset_conditional_age({{0.0, 0.0, 0.0}, {}}, axis_model(), axis_layout());
  EXPECT_NEAR(value, 30.0 / 1.75, 1e-12);
  EXPECT_NEAR(value, 17.142857, 1e-6);
}

TEST(ConditionalAge, CentroidLimitIsExact) {
  const auto aged = axis_model();
  const auto layout = axis_layout();
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(asset_conditional_age(aged.base.centroids[j], aged, layout), aged.conditional_ages[j]);
  }
  EncodedPoint near = aged.base.centroids[1];
  near.numeric[1] -= 1e-4;
  EXPECT_NEAR(asset_conditional_age(near, aged, layout), 20.0, 1e-6);
}

TEST(ConditionalAge, ClusterAgesAreMemberMeans) {
  ClusterModel model;
  model.k = 2;
  model.assignment = {0, 1, 0, 1, 1};
  const std::vector<double> ages{10.0, 1.0, 30.0, 2.0, 6.0};
  const auto aged = compute_cluster_ages(model, ages, {});
  EXPECT_DOUBLE_EQ(aged.conditional_ages[0], 20.0);
  EXPECT_DOUBLE_EQ(aged.conditional_ages[1], 3.0);
  EXPECT_THROW(compute_cluster_ages(model, std::vector<double>{1.0}, {}), Error);
}

TEST(ConditionalAge, OneTimeProjection) {
  EXPECT_DOUBLE_EQ(aging_rate(60.0, 30.0), 2.0);
  EXPECT_DOUBLE_EQ(project_one_time(2.0, 30.0, 5.0), 70.0);
  EXPECT_DOUBLE_EQ(project_one_time(1.5, 20.0, 0.0), 30.0);
  try {
    aging_rate(10.0, 0.0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroPhysicalAge);
  }
  EXPECT_THROW(project_one_time(1.0, 10.0, -1.0), Error);
}

TEST(ConditionalAge, InterpolationEndpoints) {
  const auto at_zero = interpolate_rate(1.2, 1.8, 5.0, 0.0);
  EXPECT_EQ(at_zero.rate, 1.2);
  EXPECT_FALSE(at_zero.extrapolated);
  const auto at_observed = interpolate_rate(1.2, 1.8, 5.0, 5.0);
  EXPECT_EQ(at_observed.rate, 1.8);
  EXPECT_FALSE(at_observed.extrapolated);
  const auto beyond = interpolate_rate(1.0, 2.0, 4.0, 6.0);
  EXPECT_DOUBLE_EQ(beyond.rate, 2.5);
  EXPECT_TRUE(beyond.extrapolated);
  try {
    interpolate_rate(1.0, 2.0, 0.0, 1.0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroObservedInterval);
  }
}

TEST(ConditionalAge, LongTermRateUsesMeanRatio) {
  const std::vector<RatePair> pairs{{1.0, 1.5}, {2.0, 2.0}, {0.5, 1.0}};
  EXPECT_DOUBLE_EQ(project_rate_long_term(2.0, pairs), 2.0 * (1.5 + 1.0 + 2.0) / 3.0);
  EXPECT_DOUBLE_EQ(project_long_term(3.0, 30.0, 5.0), 105.0);
  try {
    project_rate_long_term(1.0, {});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySimilars);
  }
  const std::vector<RatePair> zero{{0.0, 1.0}};
  try {
    project_rate_long_term(1.0, zero);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroBaseRate);
  }
}

TEST(ConditionalAge, SimilarAssetsRankByFeatureAndAge) {
  const auto layout = SpaceLayout::uniform(1, 0);
  std::vector<AgingTrajectory> candidates(4);
  const double features[] = {0.5, 0.25, 0.5, 0.75};
  const double ages[] = {40.0, 20.0, 20.0, 20.0};
  for (std::size_t i = 0; i < 4; ++i) {
    candidates[i].initial_point = {{features[i]}, {}};
    candidates[i].initial_age = ages[i];
  }
  const FeatureRange range{0.0, 40.0};
  const auto ranked = find_similar_assets({{0.5}, {}}, 20.0, candidates, range, layout, 3);
  ASSERT_EQ(ranked.size(), 3u);
  EXPECT_EQ(ranked[0].trajectory, 2u);
  EXPECT_EQ(ranked[1].trajectory, 1u);  // tie with 3 keeps candidate order
  EXPECT_EQ(ranked[2].trajectory, 3u);
  EXPECT_EQ(ranked[1].distance, 0.0625);
  try {
    find_similar_assets({{0.5}, {}}, 20.0, candidates, range, layout, 5);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientHistory);
  }
}

TEST(ConditionalAge, ProjectionFromSimilarsInterpolatesSpan) {
  std::vector<AgingTrajectory> candidates(2);
  candidates[0].initial_rate = 1.0;
  candidates[0].later_rate = 2.0;
  candidates[0].span_years = 10.0;
  candidates[1].initial_rate = 2.0;
  candidates[1].later_rate = 3.0;
  candidates[1].span_years = 5.0;
  const std::vector<SimilarAsset> similars{{0, 0.0}, {1, 0.0}};
  const auto p = project_from_similars(1.0, 30.0, 5.0, candidates, similars);
  EXPECT_DOUBLE_EQ(p.future_rate, (1.5 + 1.5) / 2.0);
  EXPECT_DOUBLE_EQ(p.future_conditional_age, 1.5 * 35.0);
  EXPECT_EQ(p.extrapolated, 0u);
}

}  // namespace
}  // namespace condage
