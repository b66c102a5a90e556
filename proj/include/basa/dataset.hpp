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

#ifndef BASA_DATASET_HPP_
#define BASA_DATASET_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "basa/error.hpp"
#include "basa/features.hpp"

namespace basa {

using Row = std::vector<double>;

/// Readability levels L1-L3 and their numeric values.
inline constexpr std::array<int, 3> kLevels = {1, 2, 3};

inline bool is_valid_level(int level) { return level >= 1 && level <= 3; }

/// Feature rows paired with readability levels.
struct LabeledDataset {
  std::vector<std::string> doc_ids;
  std::vector<Row> rows;
  std::vector<int> labels;
  std::vector<std::string> feature_names;
  FeatureSet feature_set = FeatureSet::kBoth;

  std::size_t size() const { return rows.size(); }
  std::size_t dims() const { return rows.empty() ? feature_names.size() : rows.front().size(); }

  void validate() const {
    if (rows.empty()) throw Error(ErrorCode::kEmptyDataset, "dataset has no rows");
    if (labels.size() != rows.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "labels and rows are not aligned");
    }
    if (!doc_ids.empty() && doc_ids.size() != rows.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "doc ids and rows are not aligned");
    }
    const std::size_t d = rows.front().size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != d) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                        " values, expected " + std::to_string(d));
      }
    }
    if (!feature_names.empty() && feature_names.size() != d) {
      throw Error(ErrorCode::kDimensionMismatch, "feature names do not match row width");
    }
  }

  LabeledDataset subset(const std::vector<std::size_t>& indices) const {
    LabeledDataset out;
    out.feature_names = feature_names;
    out.feature_set = feature_set;
    for (const auto i : indices) {
      if (!doc_ids.empty()) out.doc_ids.push_back(doc_ids[i]);
      out.rows.push_back(rows[i]);
      out.labels.push_back(labels[i]);
    }
    return out;
  }

  /// Narrows a full 15-column dataset to one feature set.
  LabeledDataset select(FeatureSet set) const {
    if (dims() != kFeatureCount) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "feature-set selection needs all " + std::to_string(kFeatureCount) +
                      " canonical columns");
    }
    LabeledDataset out;
    out.doc_ids = doc_ids;
    out.labels = labels;
    out.feature_set = set;
    out.feature_names = basa::feature_names(set);
    const auto idx = feature_indices(set);
    for (const auto& row : rows) {
      Row r;
      for (const auto i : idx) r.push_back(row[i]);
      out.rows.push_back(std::move(r));
    }
    return out;
  }
};

inline std::vector<int> distinct_classes(const std::vector<int>& labels) {
  const std::set<int> s(labels.begin(), labels.end());
  return {s.begin(), s.end()};
}

}  // namespace basa

#endif  // BASA_DATASET_HPP_
