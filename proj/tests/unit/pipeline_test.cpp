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

#include "condage/error.hpp"
#include "condage/fleet.hpp"
#include "condage/pipeline.hpp"

namespace condage {
namespace {

Fleet small_fleet(std::uint64_t seed) {
  auto cfg = load_fleet_config(std::string(CONDAGE_SOURCE_DIR) + "/configs/fleet_three_clusters.json");
  cfg.seed = seed;
  return generate_fleet(cfg);
}

PipelineConfig quick_config(std::uint64_t seed) {
  PipelineConfig c{seed};
  c.clustering.k_min = 2;
  c.clustering.k_max = 4;
  c.clustering.restarts = 3;
  return c;
}

bool same_predictions(const PipelineResult& a, const PipelineResult& b) {
  if (a.predictions.size() != b.predictions.size()) return false;
  for (std::size_t i = 0; i < a.predictions.size(); ++i) {
    const auto& x = a.predictions[i].prediction;
    const auto& y = b.predictions[i].prediction;
    if (x.asset_id != y.asset_id || x.probability != y.probability || x.predicted != y.predicted) {
      return false;
    }
  }
  return a.confusion == b.confusion;
}

TEST(Pipeline, EveryModeScoresTheHeldOutAssets) {
  const auto fleet = small_fleet(1);
  const auto cfg = quick_config(1);
  for (const auto mode : {PipelineMode::Classification, PipelineMode::PredictOneTime,
                          PipelineMode::PredictLongTerm, PipelineMode::Weibull}) {
    const auto r = run_pipeline(fleet.history, fleet.truth, mode, cfg);
    EXPECT_EQ(r.confusion.total(), r.test_assets) << to_string(mode);
    EXPECT_EQ(r.predictions.size(), r.test_assets);
    EXPECT_EQ(r.train_assets + r.test_assets, 300u);
    EXPECT_EQ(r.weibull.has_value(), mode == PipelineMode::Weibull);
  }
}

TEST(Pipeline, Deterministic) {
  const auto fleet = small_fleet(2);
  const auto a = run_pipeline(fleet.history, fleet.truth, PipelineMode::PredictLongTerm, quick_config(7));
  const auto b = run_pipeline(fleet.history, fleet.truth, PipelineMode::PredictLongTerm, quick_config(7));
  EXPECT_TRUE(same_predictions(a, b));
}

TEST(Pipeline, ModesShareOneSplit) {
  const auto fleet = small_fleet(3);
  const auto cfg = quick_config(3);
  const auto a = run_pipeline(fleet.history, fleet.truth, PipelineMode::PredictOneTime, cfg);
  const auto b = run_pipeline(fleet.history, fleet.truth, PipelineMode::Weibull, cfg);
  ASSERT_EQ(a.predictions.size(), b.predictions.size());
  for (std::size_t i = 0; i < a.predictions.size(); ++i) {
    EXPECT_EQ(a.predictions[i].prediction.asset_id, b.predictions[i].prediction.asset_id);
    EXPECT_EQ(a.predictions[i].actual, b.predictions[i].actual);
  }
}

TEST(Pipeline, ScoringOnTrainingFitsWell) {
  const auto fleet = small_fleet(4);
  auto cfg = quick_config(4);
  cfg.score_on_training = true;
  const auto r = run_pipeline(fleet.history, fleet.truth, PipelineMode::Classification, cfg);
  EXPECT_GT(r.metrics.macro.f1, 0.8);
}

TEST(Pipeline, ZeroSwapsEqualCleanRun) {
  const auto fleet = small_fleet(5);
  const std::vector<NoiseVariant> variants{{NoiseVariant::Kind::Clean, 0},
                                           {NoiseVariant::Kind::SwapStatuses, 0}};
  const auto rows = noise_experiment(fleet.history, fleet.truth, variants, quick_config(5));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(same_predictions(rows[0].result, rows[1].result));
}

TEST(Pipeline, SwapFlipsExactlyTheRequestedAssets) {
  const auto fleet = small_fleet(6);
  const auto noisy = apply_noise(fleet.history, fleet.truth, {NoiseVariant::Kind::SwapStatuses, 10}, 42);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < fleet.history.size(); ++i) {
    changed += fleet.history.records[i].status != noisy.history.records[i].status;
  }
  EXPECT_EQ(changed, 10u);
  const auto inflated =
      apply_noise(fleet.history, fleet.truth, {NoiseVariant::Kind::InflateFeatures, 5}, 42);
  std::size_t scaled = 0;
  for (std::size_t i = 0; i < fleet.history.size(); ++i) {
    const auto& before = fleet.history.records[i];
    const auto& after = inflated.history.records[i];
    for (std::size_t f = 0; f < before.values.size(); ++f) {
      if (before.values[f] != after.values[f]) {
        ++scaled;
        EXPECT_DOUBLE_EQ(after.numeric(f), before.numeric(f) * 1.5);
      }
    }
  }
  EXPECT_EQ(scaled, 5u);
}

TEST(Pipeline, FullSizeSubsetEqualsBaseline) {
  const auto fleet = small_fleet(7);
  const auto cfg = quick_config(7);
  const std::vector<std::size_t> sizes{300};
  const auto rows = size_experiment(fleet.history, fleet.truth, sizes, cfg);
  const auto base = run_pipeline(fleet.history, fleet.truth, PipelineMode::PredictLongTerm, cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].label, "300");
  EXPECT_TRUE(same_predictions(rows[0].result, base));
}

TEST(Pipeline, TinySubsetSurfacesError) {
  const auto fleet = small_fleet(8);
  const std::vector<std::size_t> tiny{6};
  try {
    size_experiment(fleet.history, fleet.truth, tiny, quick_config(8));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewPerClass);
  }
  const std::vector<std::size_t> huge{301};
  EXPECT_THROW(size_experiment(fleet.history, fleet.truth, huge, quick_config(8)), Error);
}

TEST(Pipeline, ModeNames) {
  for (const auto mode : {PipelineMode::Classification, PipelineMode::PredictOneTime,
                          PipelineMode::PredictLongTerm, PipelineMode::Weibull}) {
    EXPECT_EQ(parse_pipeline_mode(to_string(mode)), mode);
  }
  EXPECT_FALSE(parse_pipeline_mode("bogus").has_value());
}

}  // namespace
}  // namespace condage
