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

// Feature ranking by information gain over equal-frequency bins and by
// Pearson correlation with the numeric level.

#ifndef BASA_RANKING_HPP_
#define BASA_RANKING_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "basa/dataset.hpp"
#include "basa/error.hpp"
#include "basa/features.hpp"

namespace basa {

/// Bin index per value. Sorted position i goes to bin floor(i * bins / n);
/// a run of equal values takes the bin of its first member.
inline std::vector<int> discretize_equal_frequency(std::span<const double> values, int bins) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "nothing to discretize");
  if (bins < 2) throw Error(ErrorCode::kInvalidParams, "need at least 2 bins");
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<int> bin(n);
  int current = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool tied = i > 0 && values[order[i]] == values[order[i - 1]];
    if (!tied) current = static_cast<int>(i * static_cast<std::size_t>(bins) / n);
    bin[order[i]] = current;
  }
  return bin;
}

template <typename Label>
double entropy(std::span<const Label> labels) {
  if (labels.empty()) throw Error(ErrorCode::kEmptyInput, "entropy of no labels");
  std::map<Label, std::size_t> counts;
  for (const auto& l : labels) ++counts[l];
  const double n = static_cast<double>(labels.size());
  double h = 0;
  for (const auto& [label, count] : counts) {
    const double p = static_cast<double>(count) / n;
    h -= p * std::log2(p);
  }
  return h;
}

inline double entropy(const std::vector<int>& labels) {
  return entropy(std::span<const int>(labels));
}

/// H(labels) - sum_b (n_b / n) H(labels | bin b), in bits.
inline double information_gain(std::span<const double> values, std::span<const int> labels,
                               int bins) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "information gain of no values");
  if (values.size() != labels.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "values and labels are not aligned");
  }
  const auto bin = discretize_equal_frequency(values, bins);
  std::map<int, std::vector<int>> grouped;
  for (std::size_t i = 0; i < bin.size(); ++i) grouped[bin[i]].push_back(labels[i]);
  const double n = static_cast<double>(values.size());
  double conditional = 0;
  for (const auto& [b, members] : grouped) {
    conditional += static_cast<double>(members.size()) / n * entropy(members);
  }
  return std::max(0.0, entropy(labels) - conditional);
}

/// Sample Pearson correlation; nullopt when either side is constant.
inline std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kDimensionMismatch, "pearson: lengths differ");
  if (x.size() < 2) throw Error(ErrorCode::kEmptyInput, "pearson needs at least 2 points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0;
  double sxx = 0;
  double syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline std::optional<double> pearson(std::span<const double> x, std::span<const int> levels) {
  const std::vector<double> y(levels.begin(), levels.end());
  return pearson(x, std::span<const double>(y));
}

struct RankingEntry {
  std::string feature;
  std::string group;  // TRAD or LEX
  std::size_t index = 0;  // column in the dataset
  double info_gain = 0;
  std::optional<double> pearson_rho;
  int rank = 0;
};

struct RankingReport {
  int bins = 0;
  std::vector<RankingEntry> entries;  // sorted, truncated to top_k
};

/// Scores every column, then sorts by information gain (descending), |rho|
/// (descending, undefined last) and column order.
inline RankingReport rank_features(const LabeledDataset& data, int bins = 10,
                                   std::size_t top_k = 10) {
  data.validate();
  std::vector<RankingEntry> entries;
  for (std::size_t j = 0; j < data.dims(); ++j) {
    std::vector<double> column;
    column.reserve(data.size());
    for (const auto& row : data.rows) column.push_back(row[j]);
    RankingEntry e;
    e.feature = j < data.feature_names.size() ? data.feature_names[j] : "f" + std::to_string(j);
    const auto canonical = std::find(kFeatureNames.begin(), kFeatureNames.end(), e.feature);
    e.group = canonical == kFeatureNames.end()
                  ? std::string("-")
                  : std::string(feature_group(
                        static_cast<std::size_t>(canonical - kFeatureNames.begin())));
    e.index = j;
    e.info_gain = information_gain(column, data.labels, bins);
    if (data.size() >= 2) e.pearson_rho = pearson(column, std::span<const int>(data.labels));
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const RankingEntry& a, const RankingEntry& b) {
    if (a.info_gain != b.info_gain) return a.info_gain > b.info_gain;
    const double ra = a.pearson_rho ? std::abs(*a.pearson_rho) : -1.0;
    const double rb = b.pearson_rho ? std::abs(*b.pearson_rho) : -1.0;
    if (ra != rb) return ra > rb;
    return a.index < b.index;
  });
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].rank = static_cast<int>(i + 1);
  if (entries.size() > top_k) entries.resize(top_k);
  return RankingReport{bins, std::move(entries)};
}

}  // namespace basa

#endif  // BASA_RANKING_HPP_
