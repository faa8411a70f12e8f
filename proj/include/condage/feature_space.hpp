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
#include <vector>

#include "condage/asset_data.hpp"

namespace condage {

/// Maps the 1-based level c of an N-level ordered feature to (c - 1/2) / N.
/// Throws OutOfRange unless 1 <= c <= N.
double encode_ordered(std::size_t level, std::size_t level_count);

struct FeatureRange {
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const FeatureRange&, const FeatureRange&) = default;
};

/// Min-Max parameters, one range per numeric-behaving feature (numeric and
/// ordered-categorical), in schema order.
struct NormalizationParams {
  std::vector<FeatureRange> ranges;

  friend bool operator==(const NormalizationParams&, const NormalizationParams&) = default;
};

/// Slot layout of the encoded space: p numeric-behaving slots followed by q
/// unordered-categorical slots, each with its schema weight.
struct SpaceLayout {
  std::vector<std::size_t> numeric_features;
  std::vector<std::size_t> categorical_features;
  std::vector<double> numeric_weights;
  std::vector<double> categorical_weights;

  static SpaceLayout from_schema(const FeatureSchema& schema);
  /// All weights one; handy for bare point sets in tests and benchmarks.
  static SpaceLayout uniform(std::size_t p, std::size_t q);

  std::size_t p() const { return numeric_weights.size(); }
  std::size_t q() const { return categorical_weights.size(); }
};

struct EncodedPoint {
  std::vector<double> numeric;           // entries in [0, 1]
  std::vector<std::size_t> categorical;  // level indices

  friend bool operator==(const EncodedPoint&, const EncodedPoint&) = default;
  friend auto operator<=>(const EncodedPoint&, const EncodedPoint&) = default;
};

/// Raw value of feature `f` before Min-Max scaling (ordered levels pass
/// through encode_ordered first).
double numeric_view(const AssetRecord& record, const FeatureSchema& schema, std::size_t f);

/// Throws EmptyDataset when d has no records.
NormalizationParams fit_normalization(const Dataset& d);

/// (raw - min) / (max - min), clamped to [0, 1]; 0 when max == min.
double normalize(double raw, const FeatureRange& range);

/// Counts values that fell outside the fitted range and were clamped.
struct EncodeStats {
  std::size_t clamped = 0;
};

EncodedPoint encode(const AssetRecord& record, const FeatureSchema& schema,
                    const NormalizationParams& params, EncodeStats* stats = nullptr);
std::vector<EncodedPoint> encode_all(const Dataset& d, const NormalizationParams& params,
                                     EncodeStats* stats = nullptr);

/// Weighted mixed distance in squared form (no square root):
///   sum_j w_j (x_j - y_j)^2 + sum_k w_k [x_k != y_k].
/// Throws SchemaMismatch if either point does not fit the layout.
double distance(const EncodedPoint& x, const EncodedPoint& y, const SpaceLayout& layout);

/// Same as distance() without shape checks; used by the hot kernels.
inline double distance_unchecked(const EncodedPoint& x, const EncodedPoint& y,
                                 const SpaceLayout& layout) {
  double d = 0.0;
  for (std::size_t j = 0; j < x.numeric.size(); ++j) {
    const double diff = x.numeric[j] - y.numeric[j];
    d += layout.numeric_weights[j] * diff * diff;
  }
  for (std::size_t j = 0; j < x.categorical.size(); ++j) {
    if (x.categorical[j] != y.categorical[j]) d += layout.categorical_weights[j];
  }
  return d;
}

}  // namespace condage
