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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "condage/failure_classifier.hpp"
#include "condage/pipeline.hpp"

namespace condage {

inline constexpr int kArtifactVersion = 1;

struct ArtifactMetadata {
  std::string tool_version;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string dataset_fingerprint;
  std::size_t records = 0;
};

/// End state of the learning process. Self-contained: prediction needs no
/// access to the training data (cluster assignments are not stored).
struct ModelArtifact {
  ConditionModel condition;
  LogisticModel classifier;
  ArtifactMetadata metadata;
};

/// Versioned JSON text; reals use the shortest round-trip representation.
std::string artifact_to_json(const ModelArtifact& artifact);
ModelArtifact artifact_from_json(std::string_view text);

void save_artifact(const std::filesystem::path& path, const ModelArtifact& artifact);
ModelArtifact load_artifact(const std::filesystem::path& path);

}  // namespace condage
