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

#include "condage/asset_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "condage/error.hpp"
#include "condage/text.hpp"
#include "json.hpp"

namespace condage {

namespace {

constexpr std::string_view kAssetIdColumn = "AssetID";
constexpr std::string_view kYearColumn = "InspectionYear";
constexpr std::string_view kAgeColumn = "Age";
constexpr std::string_view kStatusColumn = "Status";

std::string row_label(std::size_t row) { return "row " + std::to_string(row); }

// Linear-interpolated quantile of sorted data.
double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string_view to_string(Status status) {
  return status == Status::Failed ? "Failed" : "Working";
}

std::optional<Status> parse_status(std::string_view text) {
  text = text::trim(text);
  if (text::iequals(text, "working")) return Status::Working;
  if (text::iequals(text, "failed")) return Status::Failed;
  return std::nullopt;
}

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::Numeric: return "numeric";
    case FeatureKind::Ordered: return "ordered";
    case FeatureKind::Unordered: return "unordered";
  }
  return "numeric";
}

std::optional<FeatureKind> parse_feature_kind(std::string_view text) {
  text = text::trim(text);
  if (text::iequals(text, "numeric")) return FeatureKind::Numeric;
  if (text::iequals(text, "ordered") || text::iequals(text, "ordered-categorical")) {
    return FeatureKind::Ordered;
  }
  if (text::iequals(text, "unordered") || text::iequals(text, "unordered-categorical")) {
    return FeatureKind::Unordered;
  }
  return std::nullopt;
}

std::string_view to_string(DatasetKind kind) {
  return kind == DatasetKind::LongTerm ? "long-term" : "one-time";
}

std::optional<std::size_t> FeatureSpec::level_index(std::string_view level) const {
  const auto it = std::find(levels.begin(), levels.end(), level);
  if (it == levels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - levels.begin());
}

FeatureSchema::FeatureSchema(std::vector<FeatureSpec> features)
    : features_(std::move(features)) {
  std::set<std::string> names;
  for (const auto& f : features_) {
    if (f.name.empty()) throw Error(ErrorCode::InvalidSchema, "feature with empty name");
    if (!names.insert(f.name).second) {
      throw Error(ErrorCode::InvalidSchema, "duplicate feature name '" + f.name + "'");
    }
    if (!(f.weight > 0.0) || !std::isfinite(f.weight)) {
      throw Error(ErrorCode::InvalidSchema, "feature '" + f.name + "' weight must be positive");
    }
    if (f.categorical()) {
      if (f.levels.empty()) {
        throw Error(ErrorCode::InvalidSchema, "categorical feature '" + f.name + "' has no levels");
      }
      std::set<std::string> seen;
      for (const auto& level : f.levels) {
        if (level.empty() || !seen.insert(level).second) {
          throw Error(ErrorCode::InvalidSchema,
                      "feature '" + f.name + "' has empty or duplicate level '" + level + "'");
        }
      }
    } else if (!f.levels.empty()) {
      throw Error(ErrorCode::InvalidSchema, "numeric feature '" + f.name + "' declares levels");
    }
    for (const std::string_view reserved : {kAssetIdColumn, kYearColumn, kAgeColumn, kStatusColumn}) {
      if (f.name == reserved) {
        throw Error(ErrorCode::InvalidSchema, "feature name '" + f.name + "' is reserved");
      }
    }
  }
}

std::optional<std::size_t> FeatureSchema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].name == name) return i;
  }
  return std::nullopt;
}

FeatureSchema parse_schema(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidSchema, std::string("schema is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("features") || !doc["features"].is_array()) {
    throw Error(ErrorCode::InvalidSchema, "schema must be an object with a 'features' array");
  }
  std::vector<FeatureSpec> specs;
  try {
    for (const auto& entry : doc["features"]) {
      FeatureSpec spec;
      spec.name = entry.at("name").get<std::string>();
      const auto kind = parse_feature_kind(entry.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::InvalidSchema, "unknown kind for feature '" + spec.name + "'");
      spec.kind = *kind;
      if (entry.contains("levels")) spec.levels = entry["levels"].get<std::vector<std::string>>();
      if (entry.contains("weight")) spec.weight = entry["weight"].get<double>();
      specs.push_back(std::move(spec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidSchema, e.what());
  }
  return FeatureSchema(std::move(specs));
}

FeatureSchema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open schema " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_schema(buffer.str());
}

std::string schema_to_json(const FeatureSchema& schema) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& f : schema.features()) {
    nlohmann::json entry = {{"name", f.name}, {"kind", to_string(f.kind)}, {"weight", f.weight}};
    if (f.categorical()) entry["levels"] = f.levels;
    features.push_back(std::move(entry));
  }
  return nlohmann::json{{"features", features}}.dump(2);
}

void check_dataset(const Dataset& d) {
  std::set<std::string> ids;
  std::set<std::pair<std::string, int>> keys;
  for (std::size_t r = 0; r < d.records.size(); ++r) {
    const auto& rec = d.records[r];
    if (rec.values.size() != d.schema.size()) {
      throw Error(ErrorCode::MalformedRow, row_label(r + 1) + ": value count does not match schema");
    }
    for (std::size_t f = 0; f < d.schema.size(); ++f) {
      const auto& spec = d.schema[f];
      if (spec.categorical()) {
        const auto* level = std::get_if<std::size_t>(&rec.values[f]);
        if (level == nullptr || *level >= spec.levels.size()) {
          throw Error(ErrorCode::UnknownLevel, row_label(r + 1) + ": feature '" + spec.name + "'");
        }
      } else {
        const auto* value = std::get_if<double>(&rec.values[f]);
        if (value == nullptr || !std::isfinite(*value)) {
          throw Error(ErrorCode::MalformedNumeric, row_label(r + 1) + ": feature '" + spec.name + "'");
        }
      }
    }
    if (!std::isfinite(rec.physical_age)) {
      throw Error(ErrorCode::MalformedNumeric, row_label(r + 1) + ": Age");
    }
    if (rec.physical_age < 0.0) throw Error(ErrorCode::NegativeAge, row_label(r + 1));
    if (d.kind == DatasetKind::LongTerm) {
      if (!rec.inspection_year) {
        throw Error(ErrorCode::MissingColumn, row_label(r + 1) + ": long-term record without InspectionYear");
      }
      if (!keys.emplace(rec.asset_id, *rec.inspection_year).second) {
        throw Error(ErrorCode::DuplicateKey,
                    rec.asset_id + " " + std::to_string(*rec.inspection_year));
      }
    } else if (!ids.insert(rec.asset_id).second) {
      throw Error(ErrorCode::DuplicateKey, rec.asset_id);
    }
  }
}

Dataset read_dataset(std::istream& in, const FeatureSchema& schema, DatasetKind kind) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MissingColumn, "file has no header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = text::split_csv(line);

  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!column.emplace(header[i], i).second) {
      throw Error(ErrorCode::UnexpectedColumn, "duplicate column '" + header[i] + "'");
    }
  }
  const auto require = [&](std::string_view name) {
    const auto it = column.find(std::string(name));
    if (it == column.end()) throw Error(ErrorCode::MissingColumn, std::string(name));
    return it->second;
  };
  const std::size_t id_col = require(kAssetIdColumn);
  std::optional<std::size_t> year_col;
  if (kind == DatasetKind::LongTerm) {
    year_col = require(kYearColumn);
  } else if (column.count(std::string(kYearColumn)) != 0) {
    year_col = column.at(std::string(kYearColumn));
  }
  std::vector<std::size_t> feature_cols;
  for (const auto& f : schema.features()) feature_cols.push_back(require(f.name));
  const std::size_t age_col = require(kAgeColumn);
  const std::size_t status_col = require(kStatusColumn);
  const std::size_t expected = schema.size() + 3 + (year_col ? 1 : 0);
  if (header.size() != expected) {
    for (const auto& name : header) {
      if (name != kAssetIdColumn && name != kYearColumn && name != kAgeColumn &&
          name != kStatusColumn && !schema.index_of(name)) {
        throw Error(ErrorCode::UnexpectedColumn, name);
      }
    }
  }

  Dataset d{schema, kind, {}};
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    ++row;
    const auto fields = text::split_csv(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::MalformedRow, row_label(row) + ": expected " +
                                               std::to_string(header.size()) + " fields, got " +
                                               std::to_string(fields.size()));
    }
    AssetRecord rec;
    rec.asset_id = fields[id_col];
    if (rec.asset_id.empty()) throw Error(ErrorCode::MalformedRow, row_label(row) + ": empty AssetID");
    if (year_col) {
      const auto year = text::parse_integer(fields[*year_col]);
      if (!year) throw Error(ErrorCode::MalformedNumeric, row_label(row) + ": InspectionYear");
      rec.inspection_year = static_cast<int>(*year);
    }
    rec.values.reserve(schema.size());
    for (std::size_t f = 0; f < schema.size(); ++f) {
      const auto& spec = schema[f];
      const auto& raw = fields[feature_cols[f]];
      if (spec.categorical()) {
        const auto level = spec.level_index(raw);
        if (!level) {
          throw Error(ErrorCode::UnknownLevel,
                      row_label(row) + ": feature '" + spec.name + "' value '" + raw + "'");
        }
        rec.values.emplace_back(*level);
      } else {
        const auto value = text::parse_real(raw);
        if (!value) {
          throw Error(ErrorCode::MalformedNumeric, row_label(row) + ": feature '" + spec.name + "'");
        }
        rec.values.emplace_back(*value);
      }
    }
    const auto age = text::parse_real(fields[age_col]);
    if (!age) throw Error(ErrorCode::MalformedNumeric, row_label(row) + ": feature 'Age'");
    if (*age < 0.0) throw Error(ErrorCode::NegativeAge, row_label(row));
    rec.physical_age = *age;
    const auto status = parse_status(fields[status_col]);
    if (!status) {
      throw Error(ErrorCode::MalformedStatus, row_label(row) + ": '" + fields[status_col] + "'");
    }
    rec.status = *status;
    d.records.push_back(std::move(rec));
  }
  check_dataset(d);
  return d;
}

Dataset load_dataset(const std::filesystem::path& path, const FeatureSchema& schema,
                     DatasetKind kind) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return read_dataset(in, schema, kind);
}

void write_dataset(std::ostream& out, const Dataset& d) {
  const bool with_year =
      d.kind == DatasetKind::LongTerm ||
      std::any_of(d.records.begin(), d.records.end(),
                  [](const AssetRecord& r) { return r.inspection_year.has_value(); });
  out << kAssetIdColumn;
  if (with_year) out << ',' << kYearColumn;
  for (const auto& f : d.schema.features()) out << ',' << f.name;
  out << ',' << kAgeColumn << ',' << kStatusColumn << '\n';
  for (const auto& rec : d.records) {
    out << rec.asset_id;
    if (with_year) {
      out << ',';
      if (rec.inspection_year) out << *rec.inspection_year;
    }
    for (std::size_t f = 0; f < d.schema.size(); ++f) {
      out << ',';
      if (d.schema[f].categorical()) {
        out << d.schema[f].levels[rec.level(f)];
      } else {
        out << text::format_real(rec.numeric(f));
      }
    }
    out << ',' << text::format_real(rec.physical_age) << ',' << to_string(rec.status) << '\n';
  }
}

void save_dataset(const std::filesystem::path& path, const Dataset& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  write_dataset(out, d);
}

bool has_inspection_year_column(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = text::split_csv(line);
  return std::find(header.begin(), header.end(), kYearColumn) != header.end();
}

std::vector<DataWarning> validate_dataset(const Dataset& d) {
  std::vector<DataWarning> warnings;
  if (d.records.empty()) return warnings;
  for (std::size_t f = 0; f < d.schema.size(); ++f) {
    const auto& spec = d.schema[f];
    const bool constant = std::all_of(d.records.begin(), d.records.end(), [&](const AssetRecord& r) {
      return r.values[f] == d.records.front().values[f];
    });
    if (constant && d.records.size() > 1) {
      warnings.push_back({DataWarning::Kind::ConstantFeature, spec.name, std::nullopt, 0.0,
                          "feature '" + spec.name + "' is constant"});
      continue;
    }
    if (spec.kind != FeatureKind::Numeric) continue;
    std::vector<double> sorted;
    sorted.reserve(d.records.size());
    for (const auto& r : d.records) sorted.push_back(r.numeric(f));
    std::sort(sorted.begin(), sorted.end());
    const double q1 = quantile_sorted(sorted, 0.25);
    const double q3 = quantile_sorted(sorted, 0.75);
    const double iqr = q3 - q1;
    const double lo = q1 - 3.0 * iqr;
    const double hi = q3 + 3.0 * iqr;
    for (std::size_t r = 0; r < d.records.size(); ++r) {
      const double v = d.records[r].numeric(f);
      if (v < lo || v > hi) {
        warnings.push_back({DataWarning::Kind::Outlier, spec.name, r, v,
                            "row " + std::to_string(r + 1) + " (" + d.records[r].asset_id +
                                "): '" + spec.name + "' = " + text::format_real(v) +
                                " outside [" + text::format_real(lo) + ", " +
                                text::format_real(hi) + "]"});
      }
    }
  }
  return warnings;
}

Dataset drop_outliers(const Dataset& d, const std::vector<DataWarning>& warnings) {
  std::set<std::size_t> drop;
  for (const auto& w : warnings) {
    if (w.kind == DataWarning::Kind::Outlier && w.row) drop.insert(*w.row);
  }
  Dataset out{d.schema, d.kind, {}};
  for (std::size_t r = 0; r < d.records.size(); ++r) {
    if (drop.count(r) == 0) out.records.push_back(d.records[r]);
  }
  return out;
}

std::vector<AssetHistory> group_by_asset(const Dataset& d) {
  std::vector<AssetHistory> groups;
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t r = 0; r < d.records.size(); ++r) {
    const auto& id = d.records[r].asset_id;
    const auto [it, inserted] = slot.emplace(id, groups.size());
    if (inserted) groups.push_back({id, {}});
    groups[it->second].rows.push_back(r);
  }
  for (auto& g : groups) {
    std::stable_sort(g.rows.begin(), g.rows.end(), [&](std::size_t a, std::size_t b) {
      return d.records[a].inspection_year.value_or(0) < d.records[b].inspection_year.value_or(0);
    });
  }
  return groups;
}

Dataset earliest_records(const Dataset& d) {
  Dataset out{d.schema, DatasetKind::OneTime, {}};
  for (const auto& g : group_by_asset(d)) out.records.push_back(d.records[g.rows.front()]);
  return out;
}

Dataset latest_records(const Dataset& d) {
  Dataset out{d.schema, DatasetKind::OneTime, {}};
  for (const auto& g : group_by_asset(d)) out.records.push_back(d.records[g.rows.back()]);
  return out;
}

}  // namespace condage
