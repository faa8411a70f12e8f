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

#include <sstream>

#include "condage/asset_data.hpp"
#include "condage/error.hpp"
#include "support/oracles.hpp"

namespace condage {
namespace {

FeatureSchema table_schema() {
  return FeatureSchema({{"H1n", FeatureKind::Numeric, {}, 1.0},
                        {"H2n", FeatureKind::Numeric, {}, 1.0},
                        {"H3n", FeatureKind::Numeric, {}, 1.0},
                        {"H1c", FeatureKind::Unordered, {"Severe", "Medium", "Moderate"}, 1.0}});
}

const char* kOneTime =
    "AssetID,H1n,H2n,H3n,H1c,Age,Status\n"
    "0001,26,1.38,198,Medium,28,Working\n"
    "0002,37,0.78,183,Medium,35,Failed\n"
    "0003,36,0.60,217,Severe,21,Failed\n"
    "0004,46,1.51,196,Moderate,42,Working\n"
    "0005,12,2.44,235,Moderate,39,Working\n";

Dataset read(const std::string& csv, DatasetKind kind = DatasetKind::OneTime) {
  std::istringstream in(csv);
  return read_dataset(in, table_schema(), kind);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Io;
}

TEST(AssetData, ReadsTableRow) {
  const auto d = read(kOneTime);
  ASSERT_EQ(d.size(), 5u);
  const auto& r = d.records[0];
  EXPECT_EQ(r.asset_id, "0001");
  EXPECT_DOUBLE_EQ(r.numeric(0), 26.0);
  EXPECT_DOUBLE_EQ(r.numeric(1), 1.38);
  EXPECT_DOUBLE_EQ(r.numeric(2), 198.0);
  EXPECT_EQ(r.level(3), 1u);
  EXPECT_DOUBLE_EQ(r.physical_age, 28.0);
  EXPECT_EQ(r.status, Status::Working);
  EXPECT_EQ(d.records[2].status, Status::Failed);
  EXPECT_FALSE(r.inspection_year.has_value());
}

TEST(AssetData, HeaderOnlyGivesEmptyDataset) {
  EXPECT_TRUE(read("AssetID,H1n,H2n,H3n,H1c,Age,Status\n").empty());
}

TEST(AssetData, StatusIsCaseInsensitive) {
  const auto d = read("AssetID,H1n,H2n,H3n,H1c,Age,Status\nA,1,2,3,Severe,4,FAILED\nB,1,2,3,Severe,4,working\n");
  EXPECT_EQ(d.records[0].status, Status::Failed);
  EXPECT_EQ(d.records[1].status, Status::Working);
}

TEST(AssetData, Errors) {
  const std::string header = "AssetID,H1n,H2n,H3n,H1c,Age,Status\n";
  EXPECT_EQ(code_of([&] { read(header + "A,1,2,3,Extreme,4,Working\n"); }), ErrorCode::UnknownLevel);
  EXPECT_EQ(code_of([&] { read(header + "A,1,2,3,Severe,-4,Working\n"); }), ErrorCode::NegativeAge);
  EXPECT_EQ(code_of([&] { read(header + "A,x,2,3,Severe,4,Working\n"); }), ErrorCode::MalformedNumeric);
  EXPECT_EQ(code_of([&] { read(header + "A,nan,2,3,Severe,4,Working\n"); }), ErrorCode::MalformedNumeric);
  EXPECT_EQ(code_of([&] { read(header + "A,1,2,3,Severe,4,Broken\n"); }), ErrorCode::MalformedStatus);
  EXPECT_EQ(code_of([&] { read(header + "A,1,2,3,Severe,4\n"); }), ErrorCode::MalformedRow);
  EXPECT_EQ(code_of([&] { read(header + "A,1,2,3,Severe,4,Working\nA,1,2,3,Severe,5,Working\n"); }),
            ErrorCode::DuplicateKey);
  EXPECT_EQ(code_of([&] { read("AssetID,H1n,H2n,H1c,Age,Status\n"); }), ErrorCode::MissingColumn);
  EXPECT_EQ(code_of([&] { read("AssetID,H1n,H2n,H3n,H1c,Extra,Age,Status\n"); }),
            ErrorCode::UnexpectedColumn);
  EXPECT_EQ(code_of([&] { read(kOneTime, DatasetKind::LongTerm); }), ErrorCode::MissingColumn);
}

TEST(AssetData, LongTermKeys) {
  const std::string csv =
      "AssetID,InspectionYear,H1n,H2n,H3n,H1c,Age,Status\n"
      "0001,2018,26,1.38,198,Medium,28,Working\n"
      "0001,2015,20,1.43,197,Medium,25,Working\n"
      "0002,2018,37,0.78,183,Medium,35,Failed\n";
  const auto d = read(csv, DatasetKind::LongTerm);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(*d.records[1].inspection_year, 2015);
  EXPECT_EQ(code_of([&] { read(csv + "0002,2018,1,1,1,Medium,35,Failed\n", DatasetKind::LongTerm); }),
            ErrorCode::DuplicateKey);

  const auto groups = group_by_asset(d);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].rows, (std::vector<std::size_t>{1, 0}));
  EXPECT_DOUBLE_EQ(earliest_records(d).records[0].physical_age, 25.0);
  EXPECT_DOUBLE_EQ(latest_records(d).records[0].physical_age, 28.0);
}

TEST(AssetData, CsvRoundTrip) {
  const auto d = read(kOneTime);
  std::ostringstream out;
  write_dataset(out, d);
  const auto again = read(out.str());
  ASSERT_EQ(again.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(again.records[i].asset_id, d.records[i].asset_id);
    EXPECT_EQ(again.records[i].values, d.records[i].values);
    EXPECT_EQ(again.records[i].physical_age, d.records[i].physical_age);
    EXPECT_EQ(again.records[i].status, d.records[i].status);
  }
}

TEST(AssetData, SchemaJson) {
  const auto schema = parse_schema(R"({"features":[
      {"name":"PD","kind":"numeric","weight":2},
      {"name":"Visual","kind":"ordered-categorical","levels":["Good","Poor"]}]})");
  ASSERT_EQ(schema.size(), 2u);
  EXPECT_DOUBLE_EQ(schema[0].weight, 2.0);
  EXPECT_EQ(schema[1].kind, FeatureKind::Ordered);
  EXPECT_DOUBLE_EQ(schema[1].weight, 1.0);
  EXPECT_EQ(parse_schema(schema_to_json(schema)), schema);

  EXPECT_EQ(code_of([] { parse_schema(R"({"features":[{"name":"a","kind":"numeric","weight":0}]})"); }),
            ErrorCode::InvalidSchema);
  EXPECT_EQ(code_of([] { parse_schema(R"({"features":[{"name":"a","kind":"numeric"},{"name":"a","kind":"numeric"}]})"); }),
            ErrorCode::InvalidSchema);
  EXPECT_EQ(code_of([] { parse_schema(R"({"features":[{"name":"c","kind":"unordered","levels":["x","x"]}]})"); }),
            ErrorCode::InvalidSchema);
  EXPECT_EQ(code_of([] { parse_schema(R"({"features":[{"name":"Age","kind":"numeric"}]})"); }),
            ErrorCode::InvalidSchema);
}

Dataset numeric_dataset(const std::vector<double>& values) {
  Dataset d{FeatureSchema({{"x", FeatureKind::Numeric, {}, 1.0}}), DatasetKind::OneTime, {}};
  for (std::size_t i = 0; i < values.size(); ++i) {
    d.records.push_back({std::to_string(i), std::nullopt, {values[i]}, 10.0, Status::Working});
  }
  return d;
}

TEST(AssetData, OutlierFence) {
  std::vector<double> values{3, 7, 1, 9, 4, 6, 2, 8, 5, 10};
  values.push_back(100.0);  // ten times the others' max
  const auto fence = testing::iqr_fences(values);
  ASSERT_GT(100.0, fence.upper);
  const auto warnings = validate_dataset(numeric_dataset(values));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].kind, DataWarning::Kind::Outlier);
  EXPECT_EQ(*warnings[0].row, 10u);

  const auto kept = drop_outliers(numeric_dataset(values), warnings);
  EXPECT_EQ(kept.size(), 10u);
}

TEST(AssetData, ConstantAndCleanFeatures) {
  const auto constant = validate_dataset(numeric_dataset({5, 5, 5}));
  ASSERT_EQ(constant.size(), 1u);
  EXPECT_EQ(constant[0].kind, DataWarning::Kind::ConstantFeature);
  EXPECT_TRUE(validate_dataset(numeric_dataset({1, 2, 3, 4, 5, 6, 7, 8})).empty());
}

}  // namespace
}  // namespace condage
