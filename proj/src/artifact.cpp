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

#include "condage/artifact.hpp"

#include <fstream>
#include <sstream>

#include "condage/error.hpp"
#include "json.hpp"

namespace condage {

namespace {

using nlohmann::json;

json point_to_json(const EncodedPoint& p) {
  return {{"numeric", p.numeric}, {"categorical", p.categorical}};
}

EncodedPoint point_from_json(const json& j) {
  return {j.at("numeric").get<std::vector<double>>(),
          j.at("categorical").get<std::vector<std::size_t>>()};
}

}  // namespace

std::string artifact_to_json(const ModelArtifact& artifact) {
  const auto& cond = artifact.condition;
  const auto& clf = artifact.classifier;
  json j;
  j["format"] = "condage-model";
  j["version"] = kArtifactVersion;
  j["metadata"] = {{"tool_version", artifact.metadata.tool_version},
                   {"seed", artifact.metadata.seed},
                   {"config_hash", artifact.metadata.config_hash},
                   {"dataset_fingerprint", artifact.metadata.dataset_fingerprint},
                   {"records", artifact.metadata.records}};
  j["schema"] = json::parse(schema_to_json(cond.schema));
  j["normalization"] = json::array();
  for (const auto& r : cond.aged.normalization.ranges) {
    j["normalization"].push_back({{"min", r.min}, {"max", r.max}});
  }
  json centroids = json::array();
  for (const auto& c : cond.aged.base.centroids) centroids.push_back(point_to_json(c));
  j["clusters"] = {{"k", cond.aged.base.k},
                   {"inertia", cond.aged.base.inertia},
                   {"centroids", centroids},
                   {"member_counts", cond.aged.base.member_counts},
                   {"conditional_ages", cond.aged.conditional_ages}};
  j["k_sweep"] = json::array();
  for (const auto& e : cond.sweep) {
    j["k_sweep"].push_back({{"k", e.k}, {"silhouette", e.silhouette}, {"inertia", e.inertia}});
  }
  j["logistic"] = {{"beta0", clf.beta0},
                   {"beta1", clf.beta1},
                   {"beta2", clf.beta2},
                   {"standardized", clf.standardized},
                   {"scaling",
                    {{"physical_mean", clf.scaling.physical_mean},
                     {"physical_scale", clf.scaling.physical_scale},
                     {"conditional_mean", clf.scaling.conditional_mean},
                     {"conditional_scale", clf.scaling.conditional_scale}}},
                   {"iterations", clf.iterations},
                   {"log_likelihood", clf.log_likelihood},
                   {"separation_capped", clf.separation_capped}};
  return j.dump(2) + "\n";
}

ModelArtifact artifact_from_json(std::string_view text) {
  ModelArtifact a;
  try {
    const auto j = json::parse(text);
    if (j.at("format").get<std::string>() != "condage-model") {
      throw Error(ErrorCode::InvalidArtifact, "not a condage model file");
    }
    if (j.at("version").get<int>() != kArtifactVersion) {
      throw Error(ErrorCode::InvalidArtifact, "unsupported model version");
    }
    const auto& meta = j.at("metadata");
    a.metadata.tool_version = meta.at("tool_version").get<std::string>();
    a.metadata.seed = meta.at("seed").get<std::uint64_t>();
    a.metadata.config_hash = meta.at("config_hash").get<std::string>();
    a.metadata.dataset_fingerprint = meta.at("dataset_fingerprint").get<std::string>();
    a.metadata.records = meta.at("records").get<std::size_t>();

    auto& cond = a.condition;
    cond.schema = parse_schema(j.at("schema").dump());
    cond.layout = SpaceLayout::from_schema(cond.schema);
    for (const auto& r : j.at("normalization")) {
      cond.aged.normalization.ranges.push_back({r.at("min").get<double>(), r.at("max").get<double>()});
    }
    const auto& clusters = j.at("clusters");
    auto& base = cond.aged.base;
    base.k = clusters.at("k").get<std::size_t>();
    base.inertia = clusters.at("inertia").get<double>();
    for (const auto& c : clusters.at("centroids")) base.centroids.push_back(point_from_json(c));
    base.member_counts = clusters.at("member_counts").get<std::vector<std::size_t>>();
    cond.aged.conditional_ages = clusters.at("conditional_ages").get<std::vector<double>>();
    for (const auto& e : j.at("k_sweep")) {
      cond.sweep.push_back({e.at("k").get<std::size_t>(), e.at("silhouette").get<double>(),
                            e.at("inertia").get<double>()});
    }

    const auto& l = j.at("logistic");
    auto& clf = a.classifier;
    clf.beta0 = l.at("beta0").get<double>();
    clf.beta1 = l.at("beta1").get<double>();
    clf.beta2 = l.at("beta2").get<double>();
    clf.standardized = l.at("standardized").get<Coefficients>();
    const auto& s = l.at("scaling");
    clf.scaling = {s.at("physical_mean").get<double>(), s.at("physical_scale").get<double>(),
                   s.at("conditional_mean").get<double>(), s.at("conditional_scale").get<double>()};
    clf.iterations = l.at("iterations").get<int>();
    clf.log_likelihood = l.at("log_likelihood").get<double>();
    clf.separation_capped = l.at("separation_capped").get<bool>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArtifact, e.what());
  }
  const auto& base = a.condition.aged.base;
  if (base.centroids.size() != base.k || a.condition.aged.conditional_ages.size() != base.k ||
      a.condition.aged.normalization.ranges.size() != a.condition.layout.p()) {
    throw Error(ErrorCode::InvalidArtifact, "inconsistent cluster section");
  }
  for (const auto& c : base.centroids) {
    if (c.numeric.size() != a.condition.layout.p() || c.categorical.size() != a.condition.layout.q()) {
      throw Error(ErrorCode::InvalidArtifact, "centroid does not match schema");
    }
  }
  return a;
}

void save_artifact(const std::filesystem::path& path, const ModelArtifact& artifact) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << artifact_to_json(artifact);
}

ModelArtifact load_artifact(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return artifact_from_json(buffer.str());
}

}  // namespace condage
