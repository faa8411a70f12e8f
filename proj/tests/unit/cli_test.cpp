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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "condage/artifact.hpp"
#include "condage/cli.hpp"
#include "condage/error.hpp"
#include "condage/fleet.hpp"

namespace condage {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::vector<std::string> csv_row(const std::string& text, std::size_t row) {
  std::istringstream in(text);
  std::string line;
  for (std::size_t i = 0; i <= row; ++i) std::getline(in, line);
  std::vector<std::string> fields;
  std::istringstream cells(line);
  for (std::string cell; std::getline(cells, cell, ',');) fields.push_back(cell);
  return fields;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("condage_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    spit(dir_ / "schema.json",
         R"({"features": [{"name": "PD", "kind": "numeric"}, {"name": "CO", "kind": "numeric"}]})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Three groups of identical condition readings; group ages average 15, 60 and 85.
  std::string grouped_csv(bool single_status = false) const {
    std::ostringstream s;
    s << "AssetID,PD,CO,Age,Status\n";
    int id = 0;
    for (int i = 0; i < 20; ++i) {
      s << "A" << ++id << ",10,10," << (i % 2 ? 10 : 20) << ",Working\n";
      s << "A" << ++id << ",50,90," << (i % 2 ? 50 : 70) << ','
        << (!single_status && i % 2 ? "Failed" : "Working") << '\n';
      s << "A" << ++id << ",90,20," << (i % 2 ? 80 : 90) << ','
        << (single_status ? "Working" : "Failed") << '\n';
    }
    return s.str();
  }

  fs::path path(const std::string& name) const { return dir_ / name; }
  std::string p(const std::string& name) const { return path(name).string(); }

  int learn_grouped(const std::string& out) {
    spit(path("train.csv"), grouped_csv());
    return run({"learn", "--data", p("train.csv"), "--schema", p("schema.json"), "--k-range",
                "2..6", "--seed", "3", "--out", p(out)})
        .code;
  }

  fs::path dir_;
};

TEST_F(CliTest, HelpAndUsageErrors) {
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  spit(path("train.csv"), grouped_csv());
  EXPECT_EQ(run({"learn", "--data", p("train.csv"), "--schema", p("schema.json"), "--out", p("m")}).code,
            cli::kExitUsage);  // --seed is mandatory
  EXPECT_EQ(run({"learn", "--data", p("train.csv"), "--schema", p("schema.json"), "--k-range",
                 "2..1", "--seed", "1", "--out", p("m")})
                .code,
            cli::kExitUsage);
  EXPECT_EQ(run({"learn", "--data", p("train.csv"), "--schema", p("schema.json"), "--k-range",
                 "1..3", "--seed", "1", "--out", p("m")})
                .code,
            cli::kExitUsage);
}

TEST_F(CliTest, SingleClassIsDomainError) {
  spit(path("train.csv"), grouped_csv(true));
  const auto r = run({"learn", "--data", p("train.csv"), "--schema", p("schema.json"), "--seed",
                      "1", "--out", p("m")});
  EXPECT_EQ(r.code, cli::kExitDomain);
  EXPECT_NE(r.err.find("SingleClass"), std::string::npos);
}

TEST_F(CliTest, MissingFileIsDomainError) {
  EXPECT_EQ(run({"validate", "--data", p("nope.csv"), "--schema", p("schema.json")}).code,
            cli::kExitDomain);
}

TEST_F(CliTest, LearnWritesArtifactsDeterministically) {
  ASSERT_EQ(learn_grouped("m1"), cli::kExitOk);
  ASSERT_EQ(learn_grouped("m2"), cli::kExitOk);
  for (const char* name : {"model.json", "learn_report.txt", "k_sweep.csv", "cluster_ages.csv"}) {
    ASSERT_TRUE(fs::exists(path("m1") / name)) << name;
    EXPECT_EQ(slurp(path("m1") / name), slurp(path("m2") / name)) << name;
  }
  const auto ages = slurp(path("m1") / "cluster_ages.csv");
  EXPECT_EQ(std::count(ages.begin(), ages.end(), '\n'), 4);  // header + K=3
}

TEST_F(CliTest, CentroidAssetGetsClusterAge) {
  ASSERT_EQ(learn_grouped("m"), cli::kExitOk);
  spit(path("targets.csv"), "AssetID,PD,CO,Age,Status\nT1,50,90,30,Working\nT2,10,10,12,Working\n");
  ASSERT_EQ(run({"predict", "--model", p("m/model.json"), "--data", p("targets.csv"), "--horizon",
                 "0", "--out", p("h0")})
                .code,
            cli::kExitOk);
  const auto ages = slurp(path("h0") / "ages.csv");
  const auto clusters = slurp(path("m") / "cluster_ages.csv");
  std::set<std::string> cluster_ages;
  for (std::size_t row = 1; row <= 3; ++row) cluster_ages.insert(csv_row(clusters, row)[2]);
  EXPECT_EQ(cluster_ages, (std::set<std::string>{"15", "60", "85"}));
  EXPECT_EQ(csv_row(ages, 1)[2], "60");
  EXPECT_EQ(csv_row(ages, 2)[2], "15");
}

TEST_F(CliTest, OneTimeProjectionOfWorkedExample) {
  ASSERT_EQ(learn_grouped("m"), cli::kExitOk);
  spit(path("targets.csv"), "AssetID,PD,CO,Age,Status\nT1,50,90,30,Working\n");
  ASSERT_EQ(run({"predict", "--model", p("m/model.json"), "--data", p("targets.csv"), "--horizon",
                 "5", "--mode", "one-time", "--out", p("h5")})
                .code,
            cli::kExitOk);
  const auto row = csv_row(slurp(path("h5") / "predictions.csv"), 1);
  EXPECT_EQ(row[2], "60");  // current conditional age
  EXPECT_EQ(row[3], "2");   // aging rate
  EXPECT_EQ(row[5], "70");  // projected conditional age
}

TEST_F(CliTest, LongTermModeOnOneTimeData) {
  ASSERT_EQ(learn_grouped("m"), cli::kExitOk);
  spit(path("targets.csv"), "AssetID,PD,CO,Age,Status\nT1,50,90,30,Working\n");
  const auto r = run({"predict", "--model", p("m/model.json"), "--data", p("targets.csv"),
                      "--horizon", "5", "--mode", "long-term", "--out", p("lt")});
  EXPECT_EQ(r.code, cli::kExitDomain);
  EXPECT_NE(r.err.find("ModeDataMismatch"), std::string::npos);
}

TEST_F(CliTest, ArtifactRoundTripKeepsProbabilities) {
  ASSERT_EQ(learn_grouped("m"), cli::kExitOk);
  const auto text = slurp(path("m") / "model.json");
  const auto loaded = artifact_from_json(text);
  EXPECT_EQ(artifact_to_json(loaded), text);
  const auto reloaded = artifact_from_json(artifact_to_json(loaded));
  for (double ap = 5.0; ap < 90.0; ap += 7.5) {
    for (double ac = 5.0; ac < 120.0; ac += 11.0) {
      EXPECT_EQ(predict_probability(loaded.classifier, ap, ac),
                predict_probability(reloaded.classifier, ap, ac));
    }
  }
  try {
    artifact_from_json("{\"format\": \"condage-model\", \"version\": 99}");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArtifact);
  }
}

TEST_F(CliTest, InMemoryAndSavedModelsAgree) {
  const auto cfg = load_fleet_config(std::string(CONDAGE_SOURCE_DIR) + "/configs/fleet_three_clusters.json");
  auto fleet_cfg = cfg;
  fleet_cfg.seed = 4;
  const auto fleet = generate_fleet(fleet_cfg);
  const auto base = earliest_records(fleet.history);
  ClusteringOptions opts;
  opts.k_max = 4;
  ModelArtifact artifact{learn_condition_model(base, opts, 4), {}, {}};
  artifact.classifier = train_logistic(labeled_examples(artifact.condition, base));
  save_artifact(path("model.json"), artifact);
  const auto loaded = load_artifact(path("model.json"));
  for (const auto& r : fleet.truth.records) {
    const auto a = predict_one_time(artifact.condition, artifact.classifier, r, 5.0);
    const auto b = predict_one_time(loaded.condition, loaded.classifier, r, 5.0);
    ASSERT_EQ(a.probability, b.probability) << r.asset_id;
    ASSERT_EQ(a.conditional_age_now, b.conditional_age_now) << r.asset_id;
  }
}

TEST_F(CliTest, SynthesizeAndEvaluateAreRepeatable) {
  const std::string config = std::string(CONDAGE_SOURCE_DIR) + "/configs/fleet_three_clusters.json";
  for (const char* out : {"f1", "f2"}) {
    ASSERT_EQ(run({"synthesize", "--config", config, "--seed", "5", "--out", p(out)}).code, cli::kExitOk);
  }
  for (const char* name : {"history.csv", "truth.csv", "schema.json", "fleet.json"}) {
    EXPECT_EQ(slurp(path("f1") / name), slurp(path("f2") / name)) << name;
  }
  const auto evaluate = [&](const std::string& out) {
    return run({"compare", "--history", p("f1/history.csv"), "--truth", p("f1/truth.csv"),
                "--schema", p("f1/schema.json"), "--seed", "2", "--k-range", "2..4", "--out", p(out)})
        .code;
  };
  ASSERT_EQ(evaluate("c1"), cli::kExitOk);
  ASSERT_EQ(evaluate("c2"), cli::kExitOk);
  for (const char* name : {"comparison.txt", "comparison.csv", "weibull_curve.csv"}) {
    EXPECT_EQ(slurp(path("c1") / name), slurp(path("c2") / name)) << name;
  }
  const auto table = slurp(path("c1") / "comparison.csv");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n') -
                std::count(table.begin(), table.end(), '#'),
            5);  // header + 4 methods
}

}  // namespace
}  // namespace condage
