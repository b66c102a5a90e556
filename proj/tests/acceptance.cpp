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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "basa/basa.hpp"
#include "test_data.hpp"

namespace basa {
namespace {

namespace fs = std::filesystem;

// Collects the reasons a criterion failed.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && notes_.size() < 8) notes_.push_back(what);
    failed_ = failed_ || !ok;
  }
  void info(const std::string& what) { notes_.push_back(what); }
  bool failed() const { return failed_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  bool failed_ = false;
  std::vector<std::string> notes_;
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

ConfusionMatrix published(const std::vector<std::vector<long>>& counts) {
  return ConfusionMatrix::from_counts({1, 2, 3}, counts);
}

// Confusion matrices as printed, rows actual L1-L3.
const std::vector<std::vector<long>> kLexCounts = {{9, 10, 10}, {12, 11, 7}, {16, 8, 6}};
const std::vector<std::vector<long>> kTradCounts = {{9, 11, 9}, {9, 14, 7}, {6, 10, 14}};
const std::vector<std::vector<long>> kBothCounts = {{15, 7, 7}, {8, 12, 10}, {5, 10, 15}};

void criterion1(Check& c) {
  const double both = accuracy(published(kBothCounts));
  const double lex = accuracy(published(kLexCounts));
  const double trad = accuracy(published(kTradCounts));
  c.expect(std::abs(both - 42.0 / 89) < 1e-15, "BOTH accuracy " + num(both) + " != 42/89");
  c.expect(std::abs(both - 0.472) <= 0.001, "BOTH accuracy " + num(both) + " not 0.472");
  c.expect(std::abs(lex - 26.0 / 89) < 1e-15, "LEX accuracy " + num(lex) + " != 26/89");
  c.expect(std::abs(lex - 0.290) <= 0.005, "LEX accuracy " + num(lex) + " not near 0.290");
  c.expect(std::abs(trad - 37.0 / 89) < 1e-15, "TRAD accuracy " + num(trad) + " != 37/89");
  c.expect(std::abs(trad - 0.420) <= 0.005, "TRAD accuracy " + num(trad) + " not near 0.420");
}

void criterion2(Check& c) {
  struct Expected {
    std::string name;
    const std::vector<std::vector<long>>* counts;
    std::vector<std::pair<std::string, std::string>> cells;  // L1..L3
  };
  const std::vector<Expected> table = {
      {"TRAD", &kTradCounts, {{"31.0%", "68.9%"}, {"46.6%", "53.3%"}, {"46.6%", "53.3%"}}},
      {"LEX", &kLexCounts, {{"31.0%", "68.9%"}, {"36.6%", "63.3%"}, {"20.0%", "80.0%"}}},
      {"TRAD+LEX", &kBothCounts, {{"51.0%", "49.0%"}, {"40.0%", "60.0%"}, {"50.0%", "50.0%"}}},
  };
  for (const auto& e : table) {
    const auto rates = per_class_rates(published(*e.counts));
    for (std::size_t i = 0; i < 3; ++i) {
      const std::string got = rates[i].correct_percent() + "/" + rates[i].misclassified_percent();
      const std::string want = e.cells[i].first + "/" + e.cells[i].second;
      c.expect(got == want, e.name + " L" + std::to_string(i + 1) + " computed " + got +
                                ", published " + want);
    }
  }
}

// Quadratic type count with the formulas written out.
struct TtrOracle {
  double n = 0, t = 0;
  explicit TtrOracle(const std::vector<Token>& tokens) {
    n = static_cast<double>(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      bool seen = false;
      for (std::size_t j = 0; j < i; ++j) seen = seen || tokens[j].normalized == tokens[i].normalized;
      t += seen ? 0 : 1;
    }
  }
};

void criterion3(Check& c) {
  static const std::vector<std::string> vocab = {"bata", "BATA", "aso", "pusa", "kumain",
                                                 "mag-aral", "libro", "maganda", "ng", "mga",
                                                 "Ang", "ang", "siya", "araw"};
  Rng rng(2026);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Token> tokens;
    const auto n = 1 + rng.below(60);
    for (std::uint64_t i = 0; i < n; ++i) tokens.push_back(make_token(vocab[rng.below(vocab.size())]));
    const TtrOracle o(tokens);
    const auto f = compute_ttr_family(tokens);
    const double bilog = (o.n <= 1 || o.t == o.n) ? 1.0 : std::log10(o.t) / std::log10(o.n);
    const std::string at = " (trial " + std::to_string(trial) + ")";
    c.expect(std::abs(f.ttr - o.t / o.n) <= 1e-12, "ttr" + at);
    c.expect(std::abs(f.root_ttr - o.t / std::pow(o.n, 0.5)) <= 1e-12, "root_ttr" + at);
    c.expect(std::abs(f.corr_ttr - o.t / std::pow(2 * o.n, 0.5)) <= 1e-12, "corr_ttr" + at);
    c.expect(std::abs(f.bilog_ttr - bilog) <= 1e-12, "bilog_ttr" + at);
    c.expect(std::abs(f.corr_ttr - f.root_ttr / std::sqrt(2.0)) <= 1e-12, "corr vs root" + at);
  }
  std::vector<Token> distinct;
  for (const char* w : {"isa", "dalawa", "tatlo", "apat", "lima"}) distinct.push_back(make_token(w));
  c.expect(compute_ttr_family(distinct).ttr == 1.0, "all-distinct ttr != 1");
  const auto single = compute_ttr_family(std::vector<Token>{make_token("isa")});
  c.expect(single.bilog_ttr == 1.0, "bilog_ttr for one token != 1");
  c.expect(single.ttr == 1.0, "ttr for one token != 1");
}

void criterion4(Check& c) {
  Hyperparams hp;
  for (const auto type : {ModelType::kLogistic, ModelType::kSvm}) {
    const auto data = testing::separable_dataset(100, 3, 15, 11);
    const auto report = cross_validate(data, {type, hp}, 10, 3);
    c.expect(report.accuracy >= 0.95, std::string(model_type_name(type)) + " 10-fold accuracy " +
                                          num(report.accuracy));
  }

  Rng rng(5);
  double worst = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 20, d = 15, k = 3;
    std::vector<Row> z(n, Row(d));
    std::vector<std::size_t> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : z[i]) v = rng.normal();
      y[i] = static_cast<std::size_t>(rng.below(k));
    }
    LogisticProblem problem{&z, &y, k, 0.05};
    std::vector<double> theta(problem.num_params());
    for (auto& v : theta) v = 0.5 * rng.normal();
    std::vector<double> grad;
    problem.loss(theta, &grad);
    const double h = 1e-5;
    for (std::size_t p = 0; p < theta.size(); ++p) {
      auto up = theta, down = theta;
      up[p] += h;
      down[p] -= h;
      const double numeric = (problem.loss(up) - problem.loss(down)) / (2 * h);
      const double scale = std::max({std::abs(numeric), std::abs(grad[p]), 1e-3});
      worst = std::max(worst, std::abs(numeric - grad[p]) / scale);
    }
  }
  c.expect(worst <= 1e-6, "gradient relative error " + num(worst));

  const auto model = train_svm_ova(testing::separable_dataset(50, 3, 15, 4));
  for (const double alpha : {1e-4, 0.3, 2.0, 1e5}) {
    SvmModel scaled = model;
    for (auto& w : scaled.weights) {
      for (auto& v : w) v *= alpha;
    }
    for (auto& b : scaled.biases) b *= alpha;
    for (int i = 0; i < 500; ++i) {
      Row x(15);
      for (auto& v : x) v = 4.0 * rng.normal();
      if (predict_svm(scaled, x) != predict_svm(model, x)) {
        c.expect(false, "argmax changed under scale " + num(alpha));
        break;
      }
    }
  }
}

LabeledDataset synthetic_dataset(const SynthParams& params) {
  std::vector<FeatureRow> rows;
  for (const auto& d : generate_synthetic(params)) {
    rows.push_back({d.path, d.level, extract_all(make_tagged_document(d.path, d.text))});
  }
  return to_dataset(rows);
}

void criterion5(Check& c) {
  std::map<FeatureSet, double> total;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto full = synthetic_dataset(synergy_params(seed));
    for (const auto set : {FeatureSet::kTrad, FeatureSet::kLex, FeatureSet::kBoth}) {
      total[set] += cross_validate(full.select(set), {ModelType::kSvm, {}}, 10, seed).accuracy;
    }
  }
  const double trad = total[FeatureSet::kTrad] / 10, lex = total[FeatureSet::kLex] / 10,
               both = total[FeatureSet::kBoth] / 10;
  c.info("mean accuracy TRAD=" + num(trad) + " LEX=" + num(lex) + " BOTH=" + num(both));
  c.expect(both >= trad, "BOTH " + num(both) + " < TRAD " + num(trad));
  c.expect(both >= lex, "BOTH " + num(both) + " < LEX " + num(lex));
}

void criterion6(Check& c) {
  Rng rng(17);
  LabeledDataset planted;
  for (const int level : testing::level_labels(40, 40, 40)) {
    Row row(kFeatureCount);
    for (auto& v : row) v = rng.normal();
    row[9] = level;
    planted.rows.push_back(row);
    planted.labels.push_back(level);
  }
  for (const auto name : kFeatureNames) planted.feature_names.emplace_back(name);
  const auto report = rank_features(planted, 10, 15);
  c.expect(report.entries[0].feature == "ttr", "planted feature ranked " + report.entries[0].feature);
  c.expect(report.entries[0].rank == 1, "planted rank != 1");
  c.expect(std::abs(report.entries[0].info_gain - std::log2(3.0)) <= 1e-9,
           "planted IG " + num(report.entries[0].info_gain));

  std::vector<double> x;
  std::vector<int> y;
  for (int i = 0; i < 3000; ++i) {
    x.push_back(rng.normal());
    y.push_back(1 + static_cast<int>(rng.below(3)));
  }
  const double ig = information_gain(x, y, 10);
  const auto rho = pearson(x, std::span<const int>(y));
  c.expect(ig < 0.02, "independent IG " + num(ig));
  c.expect(rho && std::abs(*rho) < 0.05, "independent rho " + num(rho.value_or(1)));

  const auto levels = testing::level_labels(29, 30, 30);
  std::vector<double> up(levels.begin(), levels.end()), down;
  for (const double v : up) down.push_back(-v);
  c.expect(pearson(up, std::span<const int>(levels)) == 1.0, "pearson(level) != 1");
  c.expect(pearson(down, std::span<const int>(levels)) == -1.0, "pearson(-level) != -1");
}

void criterion7(Check& c) {
  const auto labels = testing::level_labels(29, 30, 30);
  for (const std::uint64_t seed : {1, 7, 42}) {
    const auto folds = stratified_kfold(labels, 10, seed);
    std::set<std::size_t> seen;
    for (int f = 0; f < 10; ++f) {
      std::map<int, int> counts;
      for (const auto i : folds.test_indices(f)) {
        c.expect(seen.insert(i).second, "row " + std::to_string(i) + " in two folds");
        ++counts[labels[i]];
      }
      for (const int level : kLevels) {
        const int n = counts[level];
        c.expect(n == 2 || n == 3, "fold " + std::to_string(f) + " has " + std::to_string(n) +
                                       " rows of L" + std::to_string(level));
      }
    }
    c.expect(seen.size() == labels.size(), "folds do not cover all rows");
  }

  // Perfect signal on the same shape: pooled row sums must match the class sizes.
  LabeledDataset data;
  Rng rng(3);
  for (const int level : labels) {
    data.rows.push_back({10.0 * (level == 1) + rng.uniform(), 10.0 * (level == 2) + rng.uniform(),
                         10.0 * (level == 3) + rng.uniform()});
    data.labels.push_back(level);
  }
  const auto report = cross_validate(data, {ModelType::kSvm, {}}, 10, 7);
  const std::vector<long> want = {29, 30, 30};
  for (std::size_t i = 0; i < 3; ++i) {
    c.expect(report.confusion.row_sum(i) == want[i],
             "pooled row " + std::to_string(i) + " sums to " + std::to_string(report.confusion.row_sum(i)));
  }
}

void criterion8(Check& c) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::vector<int> levels;
    std::vector<double> counts;
    for (const auto& d : generate_synthetic(default_params(seed))) {
      levels.push_back(d.level);
      counts.push_back(extract_trad(make_tagged_document(d.path, d.text)).polysyllabic_count);
    }
    const auto profile = polysyllabic_profile(levels, counts);
    const std::string at = "seed " + std::to_string(seed) + ": ";
    if (profile.levels.size() != 3) {
      c.expect(false, at + "missing level");
      continue;
    }
    const double l1 = profile.levels[0].total, l2 = profile.levels[1].total,
                 l3 = profile.levels[2].total;
    c.expect(l1 < l2 && l2 < l3, at + "totals " + num(l1) + ", " + num(l2) + ", " + num(l3));
    const double ratio = l3 / l1;
    c.expect(ratio >= 2 && ratio <= 4, at + "L3/L1 ratio " + num(ratio));
  }
}

std::map<std::string, std::string> pipeline_artifacts(const fs::path& root) {
  std::ostringstream out, err;
  auto run = [&](RunConfig config) {
    const int code = run_command(config, out, err);
    if (code != 0) throw Error(ErrorCode::kInvalidParams, config.command + " failed: " + err.str());
  };
  RunConfig synth;
  synth.command = "synth";
  synth.out = (root / "corpus").string();
  run(synth);
  out.str("");  // synth echoes the temp directory

  RunConfig extract;
  extract.command = "extract";
  extract.manifest = (root / "corpus/manifest.csv").string();
  extract.out = (root / "features.csv").string();
  run(extract);

  RunConfig evaluate;
  evaluate.command = "evaluate";
  evaluate.features = extract.out;
  evaluate.report = (root / "report.json").string();
  evaluate.confusion_csv = (root / "confusion.csv").string();
  evaluate.profile_csv = (root / "profile.csv").string();
  run(evaluate);

  RunConfig rank;
  rank.command = "rank";
  rank.features = extract.out;
  rank.out = (root / "ranking.csv").string();
  run(rank);

  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      files[fs::relative(e.path(), root).string()] = csv::read_file(e.path().string());
    }
  }
  files["<stdout>"] = out.str();
  return files;
}

void criterion9(Check& c) {
  testing::TempDir a("accept_a"), b("accept_b");
  const auto first = pipeline_artifacts(a.path());
  const auto second = pipeline_artifacts(b.path());
  c.expect(first.size() == second.size(), "artifact sets differ in size");
  for (const auto& [name, bytes] : first) {
    const auto it = second.find(name);
    c.expect(it != second.end() && it->second == bytes, name + " differs between runs");
  }
  for (const char* name : {"features.csv", "report.json", "confusion.csv", "profile.csv",
                           "ranking.csv"}) {
    c.expect(first.count(name) == 1 && !first.at(name).empty(), std::string(name) + " missing");
  }
}

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<void(Check&)> run;
};

}  // namespace
}  // namespace basa

int main() {
  using namespace basa;
  const std::vector<Criterion> criteria = {
      {1, "accuracy from published confusion matrices", 1, criterion1},
      {2, "per-class rates match the published table", 1, criterion2},
      {3, "lexical formula oracle and boundary cases", 5, criterion3},
      {4, "classifier sanity", 30, criterion4},
      {5, "combined features beat either set on the synergy corpus", 120, criterion5},
      {6, "information gain and correlation ranking", 10, criterion6},
      {7, "stratified fold structure on 29/30/30 rows", 1, criterion7},
      {8, "polysyllabic totals rise across levels", 30, criterion8},
      {9, "extract, evaluate and rank are byte-reproducible", 60, criterion9},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.expect(seconds <= cr.limit_seconds,
                 "took " + num(seconds) + " s, limit " + num(cr.limit_seconds) + " s");
    const bool ok = !check.failed();
    failures += !ok;
    std::printf("criterion %d: %s  %s (%.2f s, limit %.0f s)\n", cr.id, ok ? "PASS" : "FAIL",
                cr.title.c_str(), seconds, cr.limit_seconds);
    for (const auto& note : check.notes()) std::printf("  %s\n", note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
