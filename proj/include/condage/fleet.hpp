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

// Synthetic asset-fleet generator standing in for a utility's condition
// database. Each asset draws a latent condition regime, a physical age and
// an aging rate; condition features are generated from its true conditional
// age and statuses follow a ground-truth logistic failure link.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "condage/asset_data.hpp"

namespace condage {

struct FleetNumericFeature {
  std::string name;
  double slope = 0.0;  // change per year of true conditional age
  double noise = 1.0;  // standard deviation of measurement noise
  double weight = 1.0;
};

struct FleetOrderedFeature {
  std::string name;
  std::vector<std::string> levels;  // severity order
  std::vector<double> thresholds;   // conditional-age cut points, levels - 1 of them
  double noise = 0.0;
  double weight = 1.0;
};

/// Unordered feature that reports each asset's regime, e.g. a cable lot.
struct FleetRegimeFeature {
  std::string name;
  double weight = 1.0;
};

struct LatentRegime {
  double weight = 1.0;      // relative frequency
  double age_mean = 30.0;   // physical age at the base year
  double age_sd = 10.0;
  double rate_mean = 1.0;   // conditional / physical at the base year
  double rate_sd = 0.1;     // log-scale spread
  double rate_drift = 1.0;  // aging-rate multiplier over the truth horizon
  std::vector<double> centers;  // one per numeric feature
};

struct FailureLink {
  double intercept = 0.0;
  double physical = 0.0;
  double conditional = 0.0;
};

struct FleetConfig {
  std::size_t assets = 1000;
  std::uint64_t seed = 0;
  int base_year = 2012;
  std::vector<int> inspection_offsets{0, 5};  // history years relative to base
  int truth_offset = 5;                       // truth year relative to base
  double min_age = 1.0;
  double drift_sd = 0.0;
  std::vector<FleetNumericFeature> numeric_features;
  std::optional<FleetOrderedFeature> ordered_feature;
  std::optional<FleetRegimeFeature> regime_feature;  // levels R001, R002, ...
  std::vector<LatentRegime> regimes;
  FailureLink failure_link;
};

/// Throws InvalidConfig on malformed input.
FleetConfig parse_fleet_config(std::string_view json_text);
FleetConfig load_fleet_config(const std::filesystem::path& path);
std::string fleet_config_to_json(const FleetConfig& cfg);

/// Throws InvalidConfig for non-positive sizes, mismatched centers, etc.
void check_fleet_config(const FleetConfig& cfg);

FeatureSchema fleet_schema(const FleetConfig& cfg);

struct Fleet {
  Dataset history;  // long-term, one row per asset and inspection offset
  Dataset truth;    // one-time (with years), statuses truth_offset years after base
  std::vector<std::size_t> latent_regime;  // per asset, for tests
};

Fleet generate_fleet(const FleetConfig& cfg);

}  // namespace condage
