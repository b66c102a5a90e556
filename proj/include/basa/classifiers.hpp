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

// Linear readability classifiers trained from scratch:
//  * multinomial logistic regression, full-batch gradient descent on
//    L2-regularised cross-entropy;
//  * one-vs-all linear SVM, Pegasos-style subgradient descent on the hinge
//    loss, predicting the argmax decision value.
// Both standardise inputs with statistics fitted on the training rows only.

#ifndef BASA_CLASSIFIERS_HPP_
#define BASA_CLASSIFIERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "basa/dataset.hpp"
#include "basa/detail/random.hpp"
#include "basa/error.hpp"
#include "basa/features.hpp"

namespace basa {

inline constexpr double kStddevFloor = 1e-9;

// ---------------------------------------------------------------------------
// Standardizer

struct Standardizer {
  std::vector<double> means;
  std::vector<double> stddevs;  // population stddev, floored at kStddevFloor

  std::size_t dims() const { return means.size(); }

  Row apply(std::span<const double> row) const {
    if (row.size() != means.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "row has " + std::to_string(row.size()) + " values, standardizer expects " +
                      std::to_string(means.size()));
    }
    Row out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - means[j]) / stddevs[j];
    return out;
  }

  std::vector<Row> apply_all(const std::vector<Row>& rows) const {
    std::vector<Row> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(apply(r));
    return out;
  }
};

inline Standardizer fit_standardizer(const std::vector<Row>& rows) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyDataset, "cannot standardize zero rows");
  const std::size_t d = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != d) throw Error(ErrorCode::kDimensionMismatch, "ragged rows");
  }
  const double n = static_cast<double>(rows.size());
  Standardizer s;
  s.means.assign(d, 0.0);
  s.stddevs.assign(d, 0.0);
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < d; ++j) s.means[j] += r[j];
  }
  for (auto& m : s.means) m /= n;
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < d; ++j) {
      const double dev = r[j] - s.means[j];
      s.stddevs[j] += dev * dev;
    }
  }
  for (auto& v : s.stddevs) v = std::max(std::sqrt(v / n), kStddevFloor);
  return s;
}

inline Row apply_standardizer(const Standardizer& s, std::span<const double> row) {
  return s.apply(row);
}

// ---------------------------------------------------------------------------
// Hyperparameters and models

struct Hyperparams {
  double learning_rate = 0.1;
  int max_iters = 5000;
  double tolerance = 1e-8;
  double l2_lambda = 1e-3;
  double svm_c = 1.0;
  int svm_epochs = 100;
  std::uint64_t seed = 7;

  void validate() const {
    if (!(learning_rate > 0) || max_iters <= 0 || !(tolerance > 0) || !(l2_lambda >= 0) ||
        !(svm_c > 0) || svm_epochs <= 0) {
      throw Error(ErrorCode::kInvalidHyperparams,
                  "learning_rate, max_iters, tolerance, svm_c and svm_epochs must be "
                  "positive; l2_lambda must be non-negative");
    }
  }
};

enum class ModelType { kLogistic, kSvm };

inline std::string_view model_type_name(ModelType t) {
  return t == ModelType::kLogistic ? "lr" : "svm";
}

inline std::optional<ModelType> parse_model_type(std::string_view name) {
  if (name == "lr" || name == "logistic") return ModelType::kLogistic;
  if (name == "svm") return ModelType::kSvm;
  return std::nullopt;
}

/// Parameters shared by both classifiers: one affine scorer per class over
/// standardised features.
struct LinearModel {
  ModelType type = ModelType::kLogistic;
  std::vector<int> classes;  // ascending levels
  std::vector<std::string> feature_order;
  FeatureSet feature_set = FeatureSet::kBoth;
  Standardizer standardizer;
  std::vector<Row> weights;  // one row per class
  std::vector<double> biases;
  Hyperparams hyperparams;

  std::size_t dims() const { return standardizer.dims(); }

  /// bias_c + z . w_c for the standardised input z.
  std::vector<double> decision_values(std::span<const double> x) const {
    const Row z = standardizer.apply(x);
    std::vector<double> scores(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
      double s = biases[c];
      for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * weights[c][j];
      scores[c] = s;
    }
    return scores;
  }
};

struct LogisticModel : LinearModel {};
struct SvmModel : LinearModel {};

/// Max-shifted softmax.
inline std::vector<double> softmax(std::span<const double> scores) {
  std::vector<double> p(scores.size());
  if (scores.empty()) return p;
  const double top = *std::max_element(scores.begin(), scores.end());
  double sum = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    p[i] = std::exp(scores[i] - top);
    sum += p[i];
  }
  for (auto& v : p) v /= sum;
  return p;
}

/// Index of the largest value; the earliest index wins ties.
inline std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

inline std::vector<double> predict_proba_lr(const LogisticModel& model, std::span<const double> x) {
  return softmax(model.decision_values(x));
}

inline int predict_svm(const SvmModel& model, std::span<const double> x) {
  return model.classes[argmax(model.decision_values(x))];
}

/// Softmax over the one-vs-all decision values; argmax agrees with
/// predict_svm.
inline std::vector<double> predict_pseudo_proba_svm(const SvmModel& model,
                                                    std::span<const double> x) {
  return softmax(model.decision_values(x));
}

/// Class probabilities for either model type (pseudo-probabilities for SVM).
inline std::vector<double> predict_proba(const LinearModel& model, std::span<const double> x) {
  return softmax(model.decision_values(x));
}

inline int predict_level(const LinearModel& model, std::span<const double> x) {
  return model.classes[argmax(model.decision_values(x))];
}

// ---------------------------------------------------------------------------
// Logistic regression

namespace classifiers_detail {

struct Prepared {
  std::vector<int> classes;
  std::vector<std::size_t> targets;  // class index per row
  Standardizer standardizer;
  std::vector<Row> z;
};

inline Prepared prepare(const LabeledDataset& data) {
  data.validate();
  Prepared p;
  p.classes = distinct_classes(data.labels);
  if (p.classes.size() < 2) {
    throw Error(ErrorCode::kSingleClassDataset,
                "training needs at least two classes, got " + std::to_string(p.classes.size()));
  }
  for (const int label : data.labels) {
    const auto it = std::lower_bound(p.classes.begin(), p.classes.end(), label);
    p.targets.push_back(static_cast<std::size_t>(it - p.classes.begin()));
  }
  p.standardizer = fit_standardizer(data.rows);
  p.z = p.standardizer.apply_all(data.rows);
  return p;
}

inline std::vector<std::string> names_for(const LabeledDataset& data) {
  if (!data.feature_names.empty()) return data.feature_names;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < data.dims(); ++j) names.push_back("f" + std::to_string(j));
  return names;
}

}  // namespace classifiers_detail

/// Flat parameter layout for a `num_classes` x (1 + d) logistic model:
/// theta[c * (d + 1)] is the bias of class c, followed by its d weights.
struct LogisticProblem {
  const std::vector<Row>* z = nullptr;        // standardised rows
  const std::vector<std::size_t>* y = nullptr;  // class index per row
  std::size_t num_classes = 0;
  double l2_lambda = 0;

  std::size_t dims() const { return z->front().size(); }
  std::size_t num_params() const { return num_classes * (dims() + 1); }

  /// Mean cross-entropy plus (l2_lambda / 2) * ||weights||^2; biases are not
  /// penalised. Fills `grad` when non-null.
  double loss(std::span<const double> theta, std::vector<double>* grad = nullptr) const {
    const std::size_t d = dims();
    const std::size_t stride = d + 1;
    const double n = static_cast<double>(z->size());
    if (grad) grad->assign(theta.size(), 0.0);
    double total = 0;
    std::vector<double> scores(num_classes);
    for (std::size_t i = 0; i < z->size(); ++i) {
      const Row& x = (*z)[i];
      for (std::size_t c = 0; c < num_classes; ++c) {
        double s = theta[c * stride];
        for (std::size_t j = 0; j < d; ++j) s += theta[c * stride + 1 + j] * x[j];
        scores[c] = s;
      }
      const double top = *std::max_element(scores.begin(), scores.end());
      double sum = 0;
      for (const double s : scores) sum += std::exp(s - top);
      const double lse = top + std::log(sum);
      total += lse - scores[(*y)[i]];
      if (grad) {
        for (std::size_t c = 0; c < num_classes; ++c) {
          const double resid = std::exp(scores[c] - lse) - (c == (*y)[i] ? 1.0 : 0.0);
          (*grad)[c * stride] += resid / n;
          for (std::size_t j = 0; j < d; ++j) (*grad)[c * stride + 1 + j] += resid * x[j] / n;
        }
      }
    }
    double penalty = 0;
    for (std::size_t c = 0; c < num_classes; ++c) {
      for (std::size_t j = 0; j < d; ++j) {
        const double w = theta[c * stride + 1 + j];
        penalty += w * w;
        if (grad) (*grad)[c * stride + 1 + j] += l2_lambda * w;
      }
    }
    return total / n + 0.5 * l2_lambda * penalty;
  }
};

/// Optional per-iteration loss record for diagnostics and tests.
struct TrainTrace {
  std::vector<double> losses;
};

inline LogisticModel train_logistic(const LabeledDataset& data, const Hyperparams& hp = {},
                                    TrainTrace* trace = nullptr) {
  hp.validate();
  auto prep = classifiers_detail::prepare(data);
  LogisticProblem problem{&prep.z, &prep.targets, prep.classes.size(), hp.l2_lambda};
  std::vector<double> theta(problem.num_params(), 0.0);
  std::vector<double> grad;
  std::vector<double> candidate(theta.size());
  double loss = problem.loss(theta, &grad);
  if (trace) trace->losses.push_back(loss);

  const std::size_t stride = problem.dims() + 1;
  double step = hp.learning_rate;
  for (int iter = 0; iter < hp.max_iters; ++iter) {
    // Gradient step on the cross-entropy, then the exact L2 proximal map on
    // the weights, which stays stable for any penalty strength. A step that
    // would raise the loss is retried at half size.
    double next_loss = 0;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      const double shrink = 1.0 / (1.0 + step * hp.l2_lambda);
      for (std::size_t k = 0; k < theta.size(); ++k) {
        if (k % stride == 0) {
          candidate[k] = theta[k] - step * grad[k];
        } else {
          const double data_grad = grad[k] - hp.l2_lambda * theta[k];
          candidate[k] = (theta[k] - step * data_grad) * shrink;
        }
      }
      next_loss = problem.loss(candidate);
      if (next_loss <= loss) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    theta.swap(candidate);
    const double improvement = loss - next_loss;
    loss = problem.loss(theta, &grad);
    if (trace) trace->losses.push_back(loss);
    if (improvement < hp.tolerance) break;
  }

  LogisticModel model;
  model.type = ModelType::kLogistic;
  model.classes = prep.classes;
  model.feature_order = classifiers_detail::names_for(data);
  model.feature_set = data.feature_set;
  model.standardizer = std::move(prep.standardizer);
  model.hyperparams = hp;
  const std::size_t d = problem.dims();
  for (std::size_t c = 0; c < prep.classes.size(); ++c) {
    model.biases.push_back(theta[c * (d + 1)]);
    model.weights.emplace_back(theta.begin() + static_cast<std::ptrdiff_t>(c * (d + 1) + 1),
                               theta.begin() + static_cast<std::ptrdiff_t>((c + 1) * (d + 1)));
  }
  return model;
}

// ---------------------------------------------------------------------------
// One-vs-all SVM

namespace classifiers_detail {

struct BinarySeparator {
  Row w;
  double bias = 0;
};

// Pegasos subgradient descent with step 1 / (lambda * t). The bias is
// treated as a weight on a constant input and shrinks with w.
inline BinarySeparator train_binary_svm(const std::vector<Row>& z, const std::vector<int>& y,
                                        double lambda, int epochs, std::uint64_t seed) {
  const std::size_t n = z.size();
  const std::size_t d = z.front().size();
  BinarySeparator sep;
  sep.w.assign(d, 0.0);
  Rng rng(seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::uint64_t t = 0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    for (const auto i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double shrink = 1.0 - eta * lambda;
      double margin = sep.bias;
      for (std::size_t j = 0; j < d; ++j) margin += sep.w[j] * z[i][j];
      margin *= y[i];
      for (auto& wj : sep.w) wj *= shrink;
      sep.bias *= shrink;
      if (margin < 1.0) {
        for (std::size_t j = 0; j < d; ++j) sep.w[j] += eta * y[i] * z[i][j];
        sep.bias += eta * y[i];
      }
    }
  }
  return sep;
}

}  // namespace classifiers_detail

inline SvmModel train_svm_ova(const LabeledDataset& data, const Hyperparams& hp = {}) {
  hp.validate();
  auto prep = classifiers_detail::prepare(data);
  const double n = static_cast<double>(prep.z.size());
  const double lambda = 1.0 / (hp.svm_c * n);

  SvmModel model;
  model.type = ModelType::kSvm;
  model.classes = prep.classes;
  model.feature_order = classifiers_detail::names_for(data);
  model.feature_set = data.feature_set;
  model.hyperparams = hp;
  for (std::size_t c = 0; c < prep.classes.size(); ++c) {
    std::vector<int> y(prep.targets.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = prep.targets[i] == c ? 1 : -1;
    auto sep = classifiers_detail::train_binary_svm(prep.z, y, lambda, hp.svm_epochs,
                                                    derive_seed(hp.seed, c));
    model.weights.push_back(std::move(sep.w));
    model.biases.push_back(sep.bias);
  }
  model.standardizer = std::move(prep.standardizer);
  return model;
}

/// Trains whichever model `type` names, returned through the common base.
inline LinearModel train_model(ModelType type, const LabeledDataset& data,
                               const Hyperparams& hp = {}) {
  if (type == ModelType::kLogistic) return train_logistic(data, hp);
  return train_svm_ova(data, hp);
}

// ---------------------------------------------------------------------------
// Model files

inline nlohmann::ordered_json hyperparams_to_json(const Hyperparams& hp) {
  nlohmann::ordered_json j;
  j["learning_rate"] = hp.learning_rate;
  j["max_iters"] = hp.max_iters;
  j["tolerance"] = hp.tolerance;
  j["l2_lambda"] = hp.l2_lambda;
  j["svm_c"] = hp.svm_c;
  j["svm_epochs"] = hp.svm_epochs;
  j["seed"] = hp.seed;
  return j;
}

inline Hyperparams hyperparams_from_json(const nlohmann::ordered_json& j) {
  Hyperparams hp;
  hp.learning_rate = j.at("learning_rate").get<double>();
  hp.max_iters = j.at("max_iters").get<int>();
  hp.tolerance = j.at("tolerance").get<double>();
  hp.l2_lambda = j.at("l2_lambda").get<double>();
  hp.svm_c = j.at("svm_c").get<double>();
  hp.svm_epochs = j.at("svm_epochs").get<int>();
  hp.seed = j.at("seed").get<std::uint64_t>();
  return hp;
}

inline nlohmann::ordered_json model_to_json(const LinearModel& model) {
  nlohmann::ordered_json j;
  j["model_type"] = model_type_name(model.type);
  j["classes"] = model.classes;
  j["feature_set"] = feature_set_name(model.feature_set);
  j["feature_order"] = model.feature_order;
  j["standardizer"] = {{"means", model.standardizer.means},
                       {"stddevs", model.standardizer.stddevs}};
  j["weights"] = model.weights;
  j["biases"] = model.biases;
  j["hyperparameters"] = hyperparams_to_json(model.hyperparams);
  j["seed"] = model.hyperparams.seed;
  return j;
}

inline LinearModel model_from_json(const nlohmann::ordered_json& j) {
  try {
    LinearModel m;
    const auto type = parse_model_type(j.at("model_type").get<std::string>());
    const auto set = parse_feature_set(j.at("feature_set").get<std::string>());
    if (!type || !set) throw Error(ErrorCode::kMalformedModel, "unknown model_type or feature_set");
    m.type = *type;
    m.feature_set = *set;
    m.classes = j.at("classes").get<std::vector<int>>();
    m.feature_order = j.at("feature_order").get<std::vector<std::string>>();
    m.standardizer.means = j.at("standardizer").at("means").get<std::vector<double>>();
    m.standardizer.stddevs = j.at("standardizer").at("stddevs").get<std::vector<double>>();
    m.weights = j.at("weights").get<std::vector<Row>>();
    m.biases = j.at("biases").get<std::vector<double>>();
    m.hyperparams = hyperparams_from_json(j.at("hyperparameters"));
    const std::size_t d = m.feature_order.size();
    bool ok = m.classes.size() >= 2 && m.weights.size() == m.classes.size() &&
              m.biases.size() == m.classes.size() && m.standardizer.means.size() == d &&
              m.standardizer.stddevs.size() == d;
    for (const auto& w : m.weights) ok = ok && w.size() == d;
    if (!ok) throw Error(ErrorCode::kMalformedModel, "inconsistent model dimensions");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedModel, e.what());
  }
}

inline std::string serialize_model(const LinearModel& model) {
  return model_to_json(model).dump(2) + "\n";
}

inline LinearModel parse_model(std::string_view text) {
  try {
    return model_from_json(nlohmann::ordered_json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedModel, e.what());
  }
}

inline LogisticModel as_logistic(const LinearModel& m) {
  if (m.type != ModelType::kLogistic) throw Error(ErrorCode::kMalformedModel, "not an lr model");
  return LogisticModel{m};
}

inline SvmModel as_svm(const LinearModel& m) {
  if (m.type != ModelType::kSvm) throw Error(ErrorCode::kMalformedModel, "not an svm model");
  return SvmModel{m};
}

}  // namespace basa

#endif  // BASA_CLASSIFIERS_HPP_
