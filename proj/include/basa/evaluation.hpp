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

// Stratified k-fold cross-validation and the reported metrics: accuracy,
// macro-F1, label RMSE, probability RMSE, confusion matrices and per-class
// correct/misclassified rates.

#ifndef BASA_EVALUATION_HPP_
#define BASA_EVALUATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "basa/classifiers.hpp"
#include "basa/dataset.hpp"
#include "basa/detail/random.hpp"
#include "basa/error.hpp"

namespace basa {

// ---------------------------------------------------------------------------
// Folds

struct FoldAssignment {
  int k = 0;
  std::vector<int> fold_of;  // fold index per row

  std::vector<std::size_t> test_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i) {
      if (fold_of[i] == fold) out.push_back(i);
    }
    return out;
  }

  std::vector<std::size_t> train_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i) {
      if (fold_of[i] != fold) out.push_back(i);
    }
    return out;
  }
};

/// Within each class (ascending label order) rows are shuffled with a seed
/// derived from (seed, label) and dealt round-robin to folds. Dealing for a
/// class continues from the fold after the previous class's last card, which
/// keeps fold sizes within one of each other.
inline FoldAssignment stratified_kfold(const std::vector<int>& labels, int k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kInvalidParams, "k must be >= 2");
  if (labels.size() < static_cast<std::size_t>(k)) {
    throw Error(ErrorCode::kTooFewRows, std::to_string(labels.size()) + " rows for " +
                                            std::to_string(k) + " folds");
  }
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  FoldAssignment a;
  a.k = k;
  a.fold_of.assign(labels.size(), -1);
  int next_fold = 0;
  for (auto& [label, rows] : by_class) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(static_cast<std::int64_t>(label))));
    rng.shuffle(rows);
    for (const auto row : rows) {
      a.fold_of[row] = next_fold;
      next_fold = (next_fold + 1) % k;
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Confusion matrix and metrics

class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::vector<int> levels)
      : levels_(std::move(levels)),
        counts_(levels_.size(), std::vector<long>(levels_.size(), 0)) {}

  static ConfusionMatrix from_counts(std::vector<int> levels, std::vector<std::vector<long>> counts) {
    ConfusionMatrix cm(std::move(levels));
    if (counts.size() != cm.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "confusion matrix shape");
    }
    for (const auto& row : counts) {
      if (row.size() != cm.size()) throw Error(ErrorCode::kDimensionMismatch, "confusion matrix shape");
    }
    cm.counts_ = std::move(counts);
    return cm;
  }

  std::size_t size() const { return levels_.size(); }
  const std::vector<int>& levels() const { return levels_; }
  const std::vector<std::vector<long>>& counts() const { return counts_; }

  std::size_t index_of(int level) const {
    const auto it = std::find(levels_.begin(), levels_.end(), level);
    if (it == levels_.end()) {
      throw Error(ErrorCode::kDimensionMismatch, "level " + std::to_string(level) + " not in matrix");
    }
    return static_cast<std::size_t>(it - levels_.begin());
  }

  void add(int actual, int predicted) { ++counts_[index_of(actual)][index_of(predicted)]; }

  long at(std::size_t actual_idx, std::size_t predicted_idx) const {
    return counts_[actual_idx][predicted_idx];
  }

  long total() const {
    long t = 0;
    for (const auto& row : counts_) {
      for (const long v : row) t += v;
    }
    return t;
  }

  long trace() const {
    long t = 0;
    for (std::size_t i = 0; i < size(); ++i) t += counts_[i][i];
    return t;
  }

  long row_sum(std::size_t i) const {
    long s = 0;
    for (const long v : counts_[i]) s += v;
    return s;
  }

  long col_sum(std::size_t j) const {
    long s = 0;
    for (const auto& row : counts_) s += row[j];
    return s;
  }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::vector<int> levels_;
  std::vector<std::vector<long>> counts_;  // [actual][predicted]
};

inline double accuracy(const ConfusionMatrix& cm) {
  const long total = cm.total();
  if (total <= 0) throw Error(ErrorCode::kEmptyMatrix, "accuracy of an empty matrix");
  return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

namespace evaluation_detail {

inline double class_f1(const ConfusionMatrix& cm, std::size_t c) {
  const double tp = static_cast<double>(cm.at(c, c));
  const double predicted = static_cast<double>(cm.col_sum(c));
  const double actual = static_cast<double>(cm.row_sum(c));
  const double precision = predicted > 0 ? tp / predicted : 0.0;
  const double recall = actual > 0 ? tp / actual : 0.0;
  return precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
}

}  // namespace evaluation_detail

/// Unweighted mean of per-class F1; a class with P + R = 0 contributes 0.
inline double macro_f1(const ConfusionMatrix& cm) {
  if (cm.total() <= 0) throw Error(ErrorCode::kEmptyMatrix, "F1 of an empty matrix");
  double sum = 0;
  for (std::size_t c = 0; c < cm.size(); ++c) sum += evaluation_detail::class_f1(cm, c);
  return sum / static_cast<double>(cm.size());
}

/// Support-weighted F1, the alternative reading of "weighted averages".
inline double weighted_f1(const ConfusionMatrix& cm) {
  const long total = cm.total();
  if (total <= 0) throw Error(ErrorCode::kEmptyMatrix, "F1 of an empty matrix");
  double sum = 0;
  for (std::size_t c = 0; c < cm.size(); ++c) {
    sum += evaluation_detail::class_f1(cm, c) * static_cast<double>(cm.row_sum(c));
  }
  return sum / static_cast<double>(total);
}

inline double rmse_label(const std::vector<int>& predicted, const std::vector<int>& actual) {
  if (predicted.empty()) throw Error(ErrorCode::kEmptyInput, "RMSE of no predictions");
  if (predicted.size() != actual.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "predicted and actual lengths differ");
  }
  double sq = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - actual[i];
    sq += d * d;
  }
  return std::sqrt(sq / static_cast<double>(predicted.size()));
}

/// Root mean squared difference between each probability vector and the
/// one-hot indicator of the actual level, averaged over instances and
/// classes. `levels` names the class of each probability slot.
inline double rmse_prob(const std::vector<std::vector<double>>& probabilities,
                        const std::vector<int>& actual, const std::vector<int>& levels) {
  if (probabilities.empty()) throw Error(ErrorCode::kEmptyInput, "RMSE of no predictions");
  if (probabilities.size() != actual.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "probabilities and actual lengths differ");
  }
  double sq = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const auto& p = probabilities[i];
    if (p.size() != levels.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "probability vector width");
    }
    double sum = 0;
    for (const double v : p) sum += v;
    if (std::abs(sum - 1.0) > 1e-9) {
      throw Error(ErrorCode::kUnnormalizedProbabilities,
                  "row " + std::to_string(i) + " sums to " + std::to_string(sum));
    }
    for (std::size_t c = 0; c < p.size(); ++c) {
      const double target = levels[c] == actual[i] ? 1.0 : 0.0;
      sq += (p[c] - target) * (p[c] - target);
    }
  }
  return std::sqrt(sq / static_cast<double>(probabilities.size() * levels.size()));
}

inline double rmse_prob(const std::vector<std::vector<double>>& probabilities,
                        const std::vector<int>& actual) {
  return rmse_prob(probabilities, actual,
                   std::vector<int>(kLevels.begin(), kLevels.end()));
}

/// Correct and misclassified shares of one actual level, in tenths of a
/// percent truncated toward zero (9/29 -> 310, 20/29 -> 689).
struct ClassRate {
  int level = 0;
  long correct_permille = 0;
  long misclassified_permille = 0;

  static std::string format(long permille) {
    return std::to_string(permille / 10) + "." + std::to_string(permille % 10) + "%";
  }
  std::string correct_percent() const { return format(correct_permille); }
  std::string misclassified_percent() const { return format(misclassified_permille); }
};

inline std::vector<ClassRate> per_class_rates(const ConfusionMatrix& cm) {
  std::vector<ClassRate> out;
  for (std::size_t c = 0; c < cm.size(); ++c) {
    const long row = cm.row_sum(c);
    if (row <= 0) {
      throw Error(ErrorCode::kEmptyClassRow,
                  "level " + std::to_string(cm.levels()[c]) + " has no instances");
    }
    const long diag = cm.at(c, c);
    out.push_back({cm.levels()[c], diag * 1000 / row, (row - diag) * 1000 / row});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polysyllabic profile

struct LevelProfile {
  int level = 0;
  std::size_t documents = 0;
  double total = 0;
  double mean_per_document = 0;
};

struct PolysyllabicProfile {
  std::vector<LevelProfile> levels;  // present levels, ascending
  std::vector<int> missing_levels;   // levels of L1-L3 with no documents
};

inline PolysyllabicProfile polysyllabic_profile(const std::vector<int>& levels,
                                                const std::vector<double>& polysyllabic_counts) {
  if (levels.size() != polysyllabic_counts.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "levels and counts are not aligned");
  }
  std::map<int, LevelProfile> acc;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    auto& p = acc[levels[i]];
    p.level = levels[i];
    p.documents += 1;
    p.total += polysyllabic_counts[i];
  }
  PolysyllabicProfile out;
  for (auto& [level, p] : acc) {
    p.mean_per_document = p.total / static_cast<double>(p.documents);
    out.levels.push_back(p);
  }
  for (const int level : kLevels) {
    if (acc.count(level) == 0) out.missing_levels.push_back(level);
  }
  return out;
}

/// From a full 15-column dataset.
inline PolysyllabicProfile polysyllabic_profile(const LabeledDataset& data) {
  const auto col = static_cast<std::size_t>(
      std::find(kFeatureNames.begin(), kFeatureNames.end(), "polysyllabic_count") -
      kFeatureNames.begin());
  const auto it = std::find(data.feature_names.begin(), data.feature_names.end(),
                            std::string(kFeatureNames[col]));
  if (it == data.feature_names.end()) {
    throw Error(ErrorCode::kMalformedFeatures, "dataset has no polysyllabic_count column");
  }
  const auto j = static_cast<std::size_t>(it - data.feature_names.begin());
  std::vector<double> counts;
  for (const auto& row : data.rows) counts.push_back(row[j]);
  return polysyllabic_profile(data.labels, counts);
}

// ---------------------------------------------------------------------------
// Cross-validation

struct ModelSpec {
  ModelType type = ModelType::kSvm;
  Hyperparams hyperparams;
};

struct Prediction {
  std::string doc_id;
  int actual = 0;
  int predicted = 0;
  int fold = 0;
  std::vector<double> probabilities;  // aligned with EvalReport::confusion.levels()
};

struct EvalReport {
  FeatureSet feature_set = FeatureSet::kBoth;
  ModelType model_type = ModelType::kSvm;
  int folds = 0;
  std::uint64_t seed = 0;
  Hyperparams hyperparams;
  double accuracy = 0;
  double macro_f1 = 0;
  double weighted_f1 = 0;
  double rmse_label = 0;
  double rmse_prob = 0;
  ConfusionMatrix confusion;
  std::vector<ClassRate> per_class;
  std::vector<Prediction> predictions;  // dataset order
};

/// Every row is predicted exactly once by a model (and standardizer) fitted
/// on the other k - 1 folds; metrics use the pooled predictions.
inline EvalReport cross_validate(const LabeledDataset& data, const ModelSpec& spec, int k,
                                 std::uint64_t seed) {
  data.validate();
  const auto folds = stratified_kfold(data.labels, k, seed);
  const auto levels = distinct_classes(data.labels);

  EvalReport report;
  report.feature_set = data.feature_set;
  report.model_type = spec.type;
  report.folds = k;
  report.seed = seed;
  report.hyperparams = spec.hyperparams;
  report.confusion = ConfusionMatrix(levels);
  report.predictions.resize(data.size());

  for (int f = 0; f < k; ++f) {
    const auto test = folds.test_indices(f);
    if (test.empty()) continue;
    LinearModel model;
    try {
      model = train_model(spec.type, data.subset(folds.train_indices(f)), spec.hyperparams);
    } catch (const Error& e) {
      throw Error(ErrorCode::kTrainingFailed, "fold " + std::to_string(f) + ": " + e.what());
    }
    for (const auto i : test) {
      const auto probs = predict_proba(model, data.rows[i]);
      Prediction p;
      p.doc_id = data.doc_ids.empty() ? std::to_string(i) : data.doc_ids[i];
      p.actual = data.labels[i];
      p.predicted = predict_level(model, data.rows[i]);
      p.fold = f;
      p.probabilities.assign(levels.size(), 0.0);
      for (std::size_t c = 0; c < model.classes.size(); ++c) {
        p.probabilities[report.confusion.index_of(model.classes[c])] = probs[c];
      }
      report.predictions[i] = std::move(p);
    }
  }

  std::vector<int> predicted;
  std::vector<int> actual;
  std::vector<std::vector<double>> probs;
  for (const auto& p : report.predictions) {
    report.confusion.add(p.actual, p.predicted);
    predicted.push_back(p.predicted);
    actual.push_back(p.actual);
    probs.push_back(p.probabilities);
  }
  report.accuracy = accuracy(report.confusion);
  report.macro_f1 = macro_f1(report.confusion);
  report.weighted_f1 = weighted_f1(report.confusion);
  report.rmse_label = rmse_label(predicted, actual);
  report.rmse_prob = rmse_prob(probs, actual, levels);
  report.per_class = per_class_rates(report.confusion);
  return report;
}

inline nlohmann::ordered_json report_to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["feature_set"] = feature_set_name(r.feature_set);
  j["model_type"] = model_type_name(r.model_type);
  j["folds"] = r.folds;
  j["seed"] = r.seed;
  j["hyperparameters"] = hyperparams_to_json(r.hyperparams);
  j["accuracy"] = r.accuracy;
  j["macro_f1"] = r.macro_f1;
  j["weighted_f1"] = r.weighted_f1;
  j["rmse_label"] = r.rmse_label;
  j["rmse_prob"] = r.rmse_prob;
  j["confusion"] = {{"levels", r.confusion.levels()}, {"counts", r.confusion.counts()}};
  auto per_class = nlohmann::ordered_json::array();
  for (const auto& rate : r.per_class) {
    per_class.push_back({{"level", rate.level},
                         {"correct", rate.correct_percent()},
                         {"misclassified", rate.misclassified_percent()}});
  }
  j["per_class"] = per_class;
  auto preds = nlohmann::ordered_json::array();
  for (const auto& p : r.predictions) {
    preds.push_back({{"doc_id", p.doc_id},
                     {"actual", p.actual},
                     {"predicted", p.predicted},
                     {"fold", p.fold},
                     {"probabilities", p.probabilities}});
  }
  j["predictions"] = preds;
  return j;
}

}  // namespace basa

#endif  // BASA_EVALUATION_HPP_
