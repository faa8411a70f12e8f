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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace condage {

enum class Status { Working, Failed };

std::string_view to_string(Status status);

/// Accepts "Working" / "Failed" in any letter case.
std::optional<Status> parse_status(std::string_view text);

inline Status flipped(Status s) {
  return s == Status::Failed ? Status::Working : Status::Failed;
}

enum class FeatureKind { Numeric, Ordered, Unordered };

std::string_view to_string(FeatureKind kind);
std::optional<FeatureKind> parse_feature_kind(std::string_view text);

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::Numeric;
  // Severity order for Ordered features; arbitrary for Unordered.
  std::vector<std::string> levels;
  double weight = 1.0;

  bool categorical() const { return kind != FeatureKind::Numeric; }
  std::optional<std::size_t> level_index(std::string_view level) const;

  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

/// Declared condition features of one asset class. Construction validates
/// unique names, non-empty unique levels for categorical kinds and strictly
/// positive weights.
class FeatureSchema {
 public:
  FeatureSchema() = default;
  explicit FeatureSchema(std::vector<FeatureSpec> features);

  const std::vector<FeatureSpec>& features() const { return features_; }
  std::size_t size() const { return features_.size(); }
  const FeatureSpec& operator[](std::size_t i) const { return features_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const FeatureSchema&, const FeatureSchema&) = default;

 private:
  std::vector<FeatureSpec> features_;
};

/// Schema config files are JSON:
///   {"features": [{"name": "PD", "kind": "numeric", "weight": 1.0},
///                 {"name": "Visual", "kind": "ordered",
///                  "levels": ["Good", "Medium", "Poor"]}]}
FeatureSchema parse_schema(std::string_view json_text);
FeatureSchema load_schema(const std::filesystem::path& path);
std::string schema_to_json(const FeatureSchema& schema);

/// Numeric features hold the raw real; categorical features hold the
/// zero-based index into FeatureSpec::levels.
using FeatureValue = std::variant<double, std::size_t>;

struct AssetRecord {
  std::string asset_id;
  std::optional<int> inspection_year;
  std::vector<FeatureValue> values;  // aligned with the schema
  double physical_age = 0.0;
  Status status = Status::Working;

  double numeric(std::size_t feature) const { return std::get<double>(values[feature]); }
  std::size_t level(std::size_t feature) const { return std::get<std::size_t>(values[feature]); }
};

enum class DatasetKind { OneTime, LongTerm };

std::string_view to_string(DatasetKind kind);

struct Dataset {
  FeatureSchema schema;
  DatasetKind kind = DatasetKind::OneTime;
  std::vector<AssetRecord> records;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
};

/// Throws condage::Error if any record or key invariant is violated.
void check_dataset(const Dataset& d);

/// CSV columns: AssetID, [InspectionYear], one per feature, Age, Status.
Dataset read_dataset(std::istream& in, const FeatureSchema& schema, DatasetKind kind);
Dataset load_dataset(const std::filesystem::path& path, const FeatureSchema& schema,
                     DatasetKind kind);
void write_dataset(std::ostream& out, const Dataset& d);
void save_dataset(const std::filesystem::path& path, const Dataset& d);

/// True when the CSV header carries an InspectionYear column.
bool has_inspection_year_column(const std::filesystem::path& path);

struct DataWarning {
  enum class Kind { Outlier, ConstantFeature };
  Kind kind;
  std::string feature;
  std::optional<std::size_t> row;  // record index for outliers
  double value = 0.0;
  std::string message;
};

/// Flags numeric values outside [Q1 - 3 IQR, Q3 + 3 IQR] of their feature and
/// features that take a single value. Never throws.
std::vector<DataWarning> validate_dataset(const Dataset& d);

/// Removes every record named by an Outlier warning.
Dataset drop_outliers(const Dataset& d, const std::vector<DataWarning>& warnings);

/// Rows of one asset ordered by ascending inspection year.
struct AssetHistory {
  std::string asset_id;
  std::vector<std::size_t> rows;
};

/// Groups records by asset id, in order of first appearance.
std::vector<AssetHistory> group_by_asset(const Dataset& d);

/// One-time view holding each asset's earliest (or latest) record.
Dataset earliest_records(const Dataset& d);
Dataset latest_records(const Dataset& d);

}  // namespace condage
