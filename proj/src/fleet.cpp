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

#include "condage/fleet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "condage/error.hpp"
#include "json.hpp"

namespace condage {

namespace {

using nlohmann::json;

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::string padded(std::size_t value, std::size_t total, int min_width) {
  const int width = std::max(min_width, static_cast<int>(std::to_string(total).size()));
  std::string id = std::to_string(value);
  return std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(id.size()))), '0') + id;
}

std::string asset_label(std::size_t i, std::size_t total) { return padded(i + 1, total, 4); }

std::string regime_label(std::size_t i, std::size_t total) { return "R" + padded(i + 1, total, 3); }

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

FleetConfig parse_fleet_config(std::string_view json_text) {
  FleetConfig cfg;
  try {
    const auto j = json::parse(json_text);
    read_opt(j, "assets", cfg.assets);
    read_opt(j, "seed", cfg.seed);
    read_opt(j, "base_year", cfg.base_year);
    read_opt(j, "inspection_offsets", cfg.inspection_offsets);
    read_opt(j, "truth_offset", cfg.truth_offset);
    read_opt(j, "min_age", cfg.min_age);
    read_opt(j, "drift_sd", cfg.drift_sd);
    for (const auto& f : j.at("numeric_features")) {
      FleetNumericFeature nf;
      nf.name = f.at("name").get<std::string>();
      read_opt(f, "slope", nf.slope);
      read_opt(f, "noise", nf.noise);
      read_opt(f, "weight", nf.weight);
      cfg.numeric_features.push_back(std::move(nf));
    }
    if (j.contains("ordered_feature") && !j["ordered_feature"].is_null()) {
      const auto& f = j["ordered_feature"];
      FleetOrderedFeature of;
      of.name = f.at("name").get<std::string>();
      of.levels = f.at("levels").get<std::vector<std::string>>();
      of.thresholds = f.at("thresholds").get<std::vector<double>>();
      read_opt(f, "noise", of.noise);
      read_opt(f, "weight", of.weight);
      cfg.ordered_feature = std::move(of);
    }
    if (j.contains("regime_feature") && !j["regime_feature"].is_null()) {
      const auto& f = j["regime_feature"];
      FleetRegimeFeature rf;
      rf.name = f.at("name").get<std::string>();
      read_opt(f, "weight", rf.weight);
      cfg.regime_feature = std::move(rf);
    }
    for (const auto& r : j.at("regimes")) {
      LatentRegime reg;
      read_opt(r, "weight", reg.weight);
      read_opt(r, "age_mean", reg.age_mean);
      read_opt(r, "age_sd", reg.age_sd);
      read_opt(r, "rate_mean", reg.rate_mean);
      read_opt(r, "rate_sd", reg.rate_sd);
      read_opt(r, "rate_drift", reg.rate_drift);
      reg.centers = r.at("centers").get<std::vector<double>>();
      cfg.regimes.push_back(std::move(reg));
    }
    if (j.contains("failure_link")) {
      const auto& l = j["failure_link"];
      read_opt(l, "intercept", cfg.failure_link.intercept);
      read_opt(l, "physical", cfg.failure_link.physical);
      read_opt(l, "conditional", cfg.failure_link.conditional);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  check_fleet_config(cfg);
  return cfg;
}

FleetConfig load_fleet_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_fleet_config(buffer.str());
}

std::string fleet_config_to_json(const FleetConfig& cfg) {
  json j;
  j["assets"] = cfg.assets;
  j["seed"] = cfg.seed;
  j["base_year"] = cfg.base_year;
  j["inspection_offsets"] = cfg.inspection_offsets;
  j["truth_offset"] = cfg.truth_offset;
  j["min_age"] = cfg.min_age;
  j["drift_sd"] = cfg.drift_sd;
  j["numeric_features"] = json::array();
  for (const auto& f : cfg.numeric_features) {
    j["numeric_features"].push_back(
        {{"name", f.name}, {"slope", f.slope}, {"noise", f.noise}, {"weight", f.weight}});
  }
  if (cfg.ordered_feature) {
    const auto& f = *cfg.ordered_feature;
    j["ordered_feature"] = {{"name", f.name},   {"levels", f.levels}, {"thresholds", f.thresholds},
                            {"noise", f.noise}, {"weight", f.weight}};
  }
  if (cfg.regime_feature) {
    j["regime_feature"] = {{"name", cfg.regime_feature->name}, {"weight", cfg.regime_feature->weight}};
  }
  j["regimes"] = json::array();
  for (const auto& r : cfg.regimes) {
    j["regimes"].push_back({{"weight", r.weight},
                            {"age_mean", r.age_mean},
                            {"age_sd", r.age_sd},
                            {"rate_mean", r.rate_mean},
                            {"rate_sd", r.rate_sd},
                            {"rate_drift", r.rate_drift},
                            {"centers", r.centers}});
  }
  j["failure_link"] = {{"intercept", cfg.failure_link.intercept},
                       {"physical", cfg.failure_link.physical},
                       {"conditional", cfg.failure_link.conditional}};
  return j.dump(2);
}

void check_fleet_config(const FleetConfig& cfg) {
  const auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidConfig, why); };
  if (cfg.assets == 0) fail("assets must be positive");
  if (cfg.numeric_features.empty() && !cfg.ordered_feature) fail("no condition features");
  if (cfg.regimes.empty()) fail("at least one regime required");
  if (cfg.inspection_offsets.empty()) fail("inspection_offsets must not be empty");
  for (std::size_t i = 0; i < cfg.inspection_offsets.size(); ++i) {
    if (cfg.inspection_offsets[i] < 0) fail("inspection offsets must be non-negative");
    if (i > 0 && cfg.inspection_offsets[i] <= cfg.inspection_offsets[i - 1]) {
      fail("inspection offsets must be strictly increasing");
    }
  }
  if (cfg.inspection_offsets.front() != 0) fail("first inspection offset must be 0");
  if (cfg.truth_offset <= 0) fail("truth_offset must be positive");
  if (!(cfg.min_age > 0.0)) fail("min_age must be positive");
  if (cfg.drift_sd < 0.0) fail("drift_sd must be non-negative");
  for (const auto& f : cfg.numeric_features) {
    if (f.name.empty() || f.noise < 0.0 || !(f.weight > 0.0)) fail("bad numeric feature " + f.name);
  }
  if (cfg.ordered_feature) {
    const auto& f = *cfg.ordered_feature;
    if (f.levels.size() < 2 || f.thresholds.size() + 1 != f.levels.size()) {
      fail("ordered feature needs levels.size() - 1 thresholds");
    }
    if (!std::is_sorted(f.thresholds.begin(), f.thresholds.end())) fail("thresholds must ascend");
  }
  if (cfg.regime_feature && cfg.regimes.size() < 2) fail("regime feature needs two or more regimes");
  for (const auto& r : cfg.regimes) {
    if (!(r.weight > 0.0) || r.age_sd < 0.0 || !(r.rate_mean > 0.0) || r.rate_sd < 0.0 ||
        !(r.rate_drift > 0.0)) {
      fail("regime parameters out of range");
    }
    if (r.centers.size() != cfg.numeric_features.size()) {
      fail("each regime needs one center per numeric feature");
    }
  }
  // Also validates names, levels and weights.
  (void)fleet_schema(cfg);
}

FeatureSchema fleet_schema(const FleetConfig& cfg) {
  std::vector<FeatureSpec> specs;
  for (const auto& f : cfg.numeric_features) {
    specs.push_back({f.name, FeatureKind::Numeric, {}, f.weight});
  }
  if (cfg.ordered_feature) {
    const auto& f = *cfg.ordered_feature;
    specs.push_back({f.name, FeatureKind::Ordered, f.levels, f.weight});
  }
  if (cfg.regime_feature) {
    std::vector<std::string> levels;
    for (std::size_t r = 0; r < cfg.regimes.size(); ++r) {
      levels.push_back(regime_label(r, cfg.regimes.size()));
    }
    specs.push_back({cfg.regime_feature->name, FeatureKind::Unordered, std::move(levels),
                     cfg.regime_feature->weight});
  }
  try {
    return FeatureSchema(std::move(specs));
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
}

Fleet generate_fleet(const FleetConfig& cfg) {
  check_fleet_config(cfg);
  const auto schema = fleet_schema(cfg);
  Fleet fleet{{schema, DatasetKind::LongTerm, {}}, {schema, DatasetKind::OneTime, {}}, {}};

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> weights;
  for (const auto& r : cfg.regimes) weights.push_back(r.weight);
  std::discrete_distribution<std::size_t> pick_regime(weights.begin(), weights.end());

  // History offsets plus the truth offset, each visited once in time order.
  std::vector<int> offsets = cfg.inspection_offsets;
  if (std::find(offsets.begin(), offsets.end(), cfg.truth_offset) == offsets.end()) {
    offsets.push_back(cfg.truth_offset);
    std::sort(offsets.begin(), offsets.end());
  }

  const auto& link = cfg.failure_link;
  for (std::size_t a = 0; a < cfg.assets; ++a) {
    const std::size_t regime_index = pick_regime(rng);
    const auto& regime = cfg.regimes[regime_index];
    fleet.latent_regime.push_back(regime_index);
    const double age0 = round2(std::max(cfg.min_age, regime.age_mean + regime.age_sd * normal(rng)));
    const double rate0 = regime.rate_mean * std::exp(regime.rate_sd * normal(rng));
    const double drift = regime.rate_drift * std::exp(cfg.drift_sd * normal(rng));
    const double frailty = uniform(rng);

    bool failed = false;
    for (const int offset : offsets) {
      const double t = static_cast<double>(offset);
      const double physical = age0 + t;
      const double rate = rate0 * std::pow(drift, t / static_cast<double>(cfg.truth_offset));
      const double conditional = rate * physical;
      const double score = link.intercept + link.physical * physical + link.conditional * conditional;
      failed = failed || frailty < 1.0 / (1.0 + std::exp(-score));

      AssetRecord rec;
      rec.asset_id = asset_label(a, cfg.assets);
      rec.inspection_year = cfg.base_year + offset;
      rec.physical_age = round2(physical);
      rec.status = failed ? Status::Failed : Status::Working;
      for (std::size_t f = 0; f < cfg.numeric_features.size(); ++f) {
        const auto& nf = cfg.numeric_features[f];
        const double value = regime.centers[f] + nf.slope * conditional + nf.noise * normal(rng);
        rec.values.emplace_back(round2(std::max(0.0, value)));
      }
      if (cfg.ordered_feature) {
        const auto& of = *cfg.ordered_feature;
        const double latent = conditional + of.noise * normal(rng);
        const auto level = static_cast<std::size_t>(
            std::upper_bound(of.thresholds.begin(), of.thresholds.end(), latent) -
            of.thresholds.begin());
        rec.values.emplace_back(level);
      }
      if (cfg.regime_feature) rec.values.emplace_back(regime_index);
      const bool in_history = std::find(cfg.inspection_offsets.begin(), cfg.inspection_offsets.end(),
                                        offset) != cfg.inspection_offsets.end();
      if (offset == cfg.truth_offset) fleet.truth.records.push_back(rec);
      if (in_history) fleet.history.records.push_back(std::move(rec));
    }
  }
  return fleet;
}

}  // namespace condage
