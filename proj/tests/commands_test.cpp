// Copyright 2026 The Basa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the built `basa` executable end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "basa/commands.hpp"
#include "test_data.hpp"

namespace basa {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run(const testing::TempDir& dir, const std::string& args) {
  const auto out = dir / "stdout.txt";
  const auto err = dir / "stderr.txt";
  const std::string cmd = std::string(BASA_CLI_PATH) + " " + args + " >" + out.string() + " 2>" +
                          err.string();
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = csv::read_file(out.string());
  r.err = csv::read_file(err.string());
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  for (auto& l : csv::lines(text)) {
    if (!l.empty()) out.push_back(l);
  }
  return out;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

// Each level lifts its own TRAD column and its own LEX column.
std::string separable_features_csv() {
  std::vector<FeatureRow> rows;
  Rng rng(4);
  for (const int level : testing::level_labels(10, 10, 10)) {
    FeatureRow r;
    r.doc_id = "doc" + std::to_string(rows.size());
    r.level = level;
    for (auto& v : r.values) v = rng.uniform();
    r.values[static_cast<std::size_t>(level - 1)] += 5.0;
    r.values[static_cast<std::size_t>(level + 8)] += 5.0;
    rows.push_back(r);
  }
  return write_features_csv(rows);
}

TEST(Cli, EmptyManifestGivesHeaderOnly) {
  testing::TempDir dir("cli_empty");
  csv::write_file((dir / "manifest.csv").string(), "path,level,format\n");
  const auto r = run(dir, "extract --manifest " + q(dir / "manifest.csv"));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, features_csv_header() + "\n");
}

TEST(Cli, UnreadableManifestIsFatal) {
  testing::TempDir dir("cli_missing");
  const auto r = run(dir, "extract --manifest " + q(dir / "nope.csv"));
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, SynthExtractAndPartialFailure) {
  testing::TempDir dir("cli_synth");
  const auto corpus = dir / "corpus";
  const auto s = run(dir, "synth --out " + q(corpus) + " --per-level 5 --seed 3");
  ASSERT_EQ(s.code, 0) << s.err;
  std::size_t txt = 0;
  for (const auto& e : fs::recursive_directory_iterator(corpus)) {
    txt += e.path().extension() == ".txt";
  }
  EXPECT_EQ(txt, 15u);

  const auto ok = run(dir, "extract --manifest " + q(corpus / "manifest.csv"));
  ASSERT_EQ(ok.code, 0) << ok.err;
  const auto rows = lines_of(ok.out);
  ASSERT_EQ(rows.size(), 16u);
  EXPECT_EQ(csv::split(rows[1]).size(), 17u);

  csv::write_file((corpus / "L2/doc_003.txt").string(), "bata|NNC broken\n");
  const auto partial = run(dir, "extract --manifest " + q(corpus / "manifest.csv") + " --out " +
                                    q(dir / "features.csv"));
  EXPECT_EQ(partial.code, 2);
  EXPECT_NE(partial.err.find("L2/doc_003.txt"), std::string::npos) << partial.err;
  EXPECT_EQ(read_features_csv(csv::read_file((dir / "features.csv").string())).size(), 14u);
}

TEST(Cli, DefaultSynthHas89Documents) {
  testing::TempDir dir("cli_default");
  ASSERT_EQ(run(dir, "synth --out " + q(dir / "c")).code, 0);
  const auto parsed = parse_manifest(csv::read_file((dir / "c/manifest.csv").string()));
  EXPECT_EQ(parsed.manifest.entries.size(), 89u);
  EXPECT_TRUE(parsed.errors.empty());
}

TEST(Cli, EvaluatePerfectSignalAndDeterminism) {
  testing::TempDir dir("cli_eval");
  csv::write_file((dir / "f.csv").string(), separable_features_csv());
  const std::string base = "evaluate --features " + q(dir / "f.csv") + " --folds 5 --report ";
  const auto a = run(dir, base + q(dir / "a.json") + " --confusion-csv " + q(dir / "cm.csv") +
                              " --profile-csv " + q(dir / "profile.csv"));
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("accuracy=1.000"), std::string::npos) << a.out;
  EXPECT_NE(a.out.find("L1\t100.0%\t0.0%"), std::string::npos) << a.out;
  const auto b = run(dir, base + q(dir / "b.json"));
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(csv::read_file((dir / "a.json").string()), csv::read_file((dir / "b.json").string()));

  const auto report = nlohmann::json::parse(csv::read_file((dir / "a.json").string()));
  EXPECT_EQ(report["tool_version"], std::string(kToolVersion));
  EXPECT_TRUE(report["inputs"].contains("features"));
  EXPECT_EQ(report["predictions"].size(), 30u);
  EXPECT_EQ(lines_of(csv::read_file((dir / "cm.csv").string())).size(), 4u);
  EXPECT_EQ(lines_of(csv::read_file((dir / "profile.csv").string())).front(),
            "level,documents,total,mean_per_document");
}

TEST(Cli, EvaluateTrainingFailureIsFatal) {
  testing::TempDir dir("cli_evalfail");
  csv::write_file((dir / "f.csv").string(), separable_features_csv());
  const auto r = run(dir, "evaluate --features " + q(dir / "f.csv") + " --folds 50");
  EXPECT_EQ(r.code, 1);
  const auto bad = run(dir, "evaluate --features " + q(dir / "missing.csv"));
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, RankPlantedFeature) {
  testing::TempDir dir("cli_rank");
  std::vector<FeatureRow> rows;
  Rng rng(8);
  for (const int level : testing::level_labels(20, 20, 20)) {
    FeatureRow r;
    r.doc_id = "d" + std::to_string(rows.size());
    r.level = level;
    for (auto& v : r.values) v = rng.normal();
    r.values[13] = level;
    rows.push_back(r);
  }
  csv::write_file((dir / "f.csv").string(), write_features_csv(rows));
  const auto r = run(dir, "rank --features " + q(dir / "f.csv"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 11u);
  EXPECT_EQ(lines[0], "feature,set,info_gain,pearson_rho,rank");
  EXPECT_EQ(lines[1].substr(0, lines[1].find(',')), "lexical_density");
  EXPECT_EQ(lines[1].substr(lines[1].rfind(',') + 1), "1");
  EXPECT_EQ(run(dir, "rank --features " + q(dir / "f.csv")).out, r.out);

  const auto listing = run(dir, "rank --features " + q(dir / "f.csv") + " --out " +
                                    q(dir / "rank.csv") + " --feature-set LEX --top 3");
  ASSERT_EQ(listing.code, 0) << listing.err;
  EXPECT_EQ(lines_of(csv::read_file((dir / "rank.csv").string())).size(), 4u);
  EXPECT_NE(listing.out.find("lexical_density"), std::string::npos);

  csv::write_file((dir / "bad.csv").string(), "doc_id,level\nx,1\n");
  EXPECT_EQ(run(dir, "rank --features " + q(dir / "bad.csv")).code, 1);
}

TEST(Cli, TrainPredict) {
  testing::TempDir dir("cli_predict");
  const std::string features = separable_features_csv();
  csv::write_file((dir / "f.csv").string(), features);
  for (const std::string type : {"lr", "svm"}) {
    const auto model = dir / (type + ".json");
    const auto t = run(dir, "train --features " + q(dir / "f.csv") + " --model-type " + type +
                                " --feature-set trad --model " + q(model));
    ASSERT_EQ(t.code, 0) << t.err;
    const auto p = run(dir, "predict --model " + q(model) + " --features " + q(dir / "f.csv"));
    ASSERT_EQ(p.code, 0) << p.err;
    const auto rows = read_features_csv(features);
    const auto lines = lines_of(p.out);
    ASSERT_EQ(lines.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::istringstream in(lines[i]);
      std::string id, field;
      int level = 0;
      in >> id >> level;
      EXPECT_EQ(id, rows[i].doc_id);
      EXPECT_EQ(level, *rows[i].level) << type << " " << lines[i];
      double sum = 0;
      int classes = 0;
      while (in >> field) {
        sum += std::stod(field.substr(field.find('=') + 1));
        ++classes;
      }
      EXPECT_EQ(classes, 3);
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
    const auto mismatch = run(dir, "predict --model " + q(model) + " --features " +
                                       q(dir / "f.csv") + " --feature-set both");
    EXPECT_EQ(mismatch.code, 1);
    EXPECT_NE(mismatch.err.find("feature set"), std::string::npos) << mismatch.err;
  }

  auto json = nlohmann::ordered_json::parse(csv::read_file((dir / "lr.json").string()));
  std::swap(json["feature_order"][0], json["feature_order"][1]);
  csv::write_file((dir / "swapped.json").string(), json.dump());
  EXPECT_EQ(run(dir, "predict --model " + q(dir / "swapped.json") + " --features " +
                         q(dir / "f.csv"))
                .code,
            1);
}

TEST(Cli, UsageErrors) {
  testing::TempDir dir("cli_usage");
  EXPECT_NE(run(dir, "").code, 0);
  EXPECT_NE(run(dir, "evaluate --feature-set nope").code, 0);
  EXPECT_EQ(run(dir, "--version").out, std::string(kToolVersion) + "\n");
}

}  // namespace
}  // namespace basa
