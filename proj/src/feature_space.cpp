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

#include "condage/feature_space.hpp"

#include <algorithm>
#include <string>

#include "condage/error.hpp"

namespace condage {

double encode_ordered(std::size_t level, std::size_t level_count) {
  if (level_count == 0 || level < 1 || level > level_count) {
    throw Error(ErrorCode::OutOfRange, "ordered level " + std::to_string(level) + " not in [1, " +
                                           std::to_string(level_count) + "]");
  }
  return (static_cast<double>(level) - 0.5) / static_cast<double>(level_count);
}

SpaceLayout SpaceLayout::from_schema(const FeatureSchema& schema) {
  SpaceLayout layout;
  for (std::size_t f = 0; f < schema.size(); ++f) {
    if (schema[f].kind == FeatureKind::Unordered) {
      layout.categorical_features.push_back(f);
      layout.categorical_weights.push_back(schema[f].weight);
    } else {
      layout.numeric_features.push_back(f);
      layout.numeric_weights.push_back(schema[f].weight);
    }
  }
  return layout;
}

SpaceLayout SpaceLayout::uniform(std::size_t p, std::size_t q) {
  SpaceLayout layout;
  for (std::size_t j = 0; j < p; ++j) layout.numeric_features.push_back(j);
  for (std::size_t j = 0; j < q; ++j) layout.categorical_features.push_back(p + j);
  layout.numeric_weights.assign(p, 1.0);
  layout.categorical_weights.assign(q, 1.0);
  return layout;
}

double numeric_view(const AssetRecord& record, const FeatureSchema& schema, std::size_t f) {
  if (schema[f].kind == FeatureKind::Ordered) {
    return encode_ordered(record.level(f) + 1, schema[f].levels.size());
  }
  return record.numeric(f);
}

NormalizationParams fit_normalization(const Dataset& d) {
  if (d.records.empty()) throw Error(ErrorCode::EmptyDataset, "cannot fit normalization");
  const auto layout = SpaceLayout::from_schema(d.schema);
  NormalizationParams params;
  for (const std::size_t f : layout.numeric_features) {
    FeatureRange range{numeric_view(d.records.front(), d.schema, f),
                       numeric_view(d.records.front(), d.schema, f)};
    for (const auto& rec : d.records) {
      const double v = numeric_view(rec, d.schema, f);
      range.min = std::min(range.min, v);
      range.max = std::max(range.max, v);
    }
    params.ranges.push_back(range);
  }
  return params;
}

double normalize(double raw, const FeatureRange& range) {
  if (!(range.max > range.min)) return 0.0;
  return std::clamp((raw - range.min) / (range.max - range.min), 0.0, 1.0);
}

EncodedPoint encode(const AssetRecord& record, const FeatureSchema& schema,
                    const NormalizationParams& params, EncodeStats* stats) {
  const auto layout = SpaceLayout::from_schema(schema);
  if (params.ranges.size() != layout.p() || record.values.size() != schema.size()) {
    throw Error(ErrorCode::SchemaMismatch, "record or normalization does not match schema");
  }
  EncodedPoint point;
  point.numeric.reserve(layout.p());
  for (std::size_t j = 0; j < layout.p(); ++j) {
    const double raw = numeric_view(record, schema, layout.numeric_features[j]);
    const auto& range = params.ranges[j];
    if (stats != nullptr && (raw < range.min || raw > range.max)) ++stats->clamped;
    point.numeric.push_back(normalize(raw, range));
  }
  point.categorical.reserve(layout.q());
  for (const std::size_t f : layout.categorical_features) point.categorical.push_back(record.level(f));
  return point;
}

std::vector<EncodedPoint> encode_all(const Dataset& d, const NormalizationParams& params,
                                     EncodeStats* stats) {
  std::vector<EncodedPoint> points;
  points.reserve(d.records.size());
  for (const auto& rec : d.records) points.push_back(encode(rec, d.schema, params, stats));
  return points;
}

double distance(const EncodedPoint& x, const EncodedPoint& y, const SpaceLayout& layout) {
  if (x.numeric.size() != layout.p() || y.numeric.size() != layout.p() ||
      x.categorical.size() != layout.q() || y.categorical.size() != layout.q()) {
    throw Error(ErrorCode::SchemaMismatch, "encoded points do not match the layout");
  }
  return distance_unchecked(x, y, layout);
}

}  // namespace condage
