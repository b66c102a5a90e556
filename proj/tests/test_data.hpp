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

// Seeded datasets shared by the unit and acceptance tests.

#ifndef BASA_TESTS_TEST_DATA_HPP_
#define BASA_TESTS_TEST_DATA_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "basa/dataset.hpp"
#include "basa/detail/random.hpp"

namespace basa::testing {

/// `per_class` rows for each level in 1..classes. Class c is shifted by +3 on
/// every feature j with j % classes == c - 1 and the noise is bounded, so each
/// class is linearly separable from the rest.
inline LabeledDataset separable_dataset(int per_class, int classes, std::size_t dims,
                                        std::uint64_t seed) {
  LabeledDataset data;
  Rng rng(seed);
  for (int c = 1; c <= classes; ++c) {
    for (int i = 0; i < per_class; ++i) {
      Row row(dims);
      for (std::size_t j = 0; j < dims; ++j) {
        const bool own = static_cast<int>(j % static_cast<std::size_t>(classes)) == c - 1;
        row[j] = (own ? 3.0 : 0.0) + (2.0 * rng.uniform() - 1.0);
      }
      data.doc_ids.push_back("r" + std::to_string(data.rows.size()));
      data.rows.push_back(std::move(row));
      data.labels.push_back(c);
    }
  }
  for (std::size_t j = 0; j < dims; ++j) data.feature_names.push_back("f" + std::to_string(j));
  return data;
}

/// Balanced labels 1..3 with per-class counts given.
inline std::vector<int> level_labels(int l1, int l2, int l3) {
  std::vector<int> labels;
  labels.insert(labels.end(), static_cast<std::size_t>(l1), 1);
  labels.insert(labels.end(), static_cast<std::size_t>(l2), 2);
  labels.insert(labels.end(), static_cast<std::size_t>(l3), 3);
  return labels;
}

/// Fresh directory under the system temp path, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("basa_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace basa::testing

#endif  // BASA_TESTS_TEST_DATA_HPP_
