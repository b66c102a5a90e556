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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "basa/ranking.hpp"
#include "test_data.hpp"

namespace basa {
namespace {

std::map<int, int> populations(const std::vector<int>& bins) {
  std::map<int, int> out;
  for (const int b : bins) ++out[b];
  return out;
}

std::vector<double> as_double(const std::vector<int>& v) { return {v.begin(), v.end()}; }

TEST(Discretize, Examples) {
  std::vector<double> ten;
  for (int i = 0; i < 10; ++i) ten.push_back(std::sin(i));
  const auto two = populations(discretize_equal_frequency(ten, 2));
  EXPECT_EQ(two, (std::map<int, int>{{0, 5}, {1, 5}}));

  const auto same = populations(discretize_equal_frequency(std::vector<double>(7, 2.5), 4));
  EXPECT_EQ(same.size(), 1u);

  const std::vector<double> nine = {9, 1, 8, 2, 7, 3, 6, 4, 5};
  const auto bins = discretize_equal_frequency(nine, 3);
  EXPECT_EQ(populations(bins), (std::map<int, int>{{0, 3}, {1, 3}, {2, 3}}));
  EXPECT_EQ(bins[1], 0);
  EXPECT_EQ(bins[0], 2);
}

TEST(Discretize, TiesFallInLowerBin) {
  const auto bins = discretize_equal_frequency(std::vector<double>{1, 2, 2, 2, 3, 4}, 2);
  EXPECT_EQ(bins, (std::vector<int>{0, 0, 0, 0, 1, 1}));
}

TEST(Discretize, NearEqualPopulations) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = 1 + rng.below(200);
    const int b = 2 + static_cast<int>(rng.below(12));
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    int lo = 1 << 30, hi = 0;
    for (const auto& [bin, count] : populations(discretize_equal_frequency(v, b))) {
      lo = std::min(lo, count);
      hi = std::max(hi, count);
    }
    if (n >= static_cast<std::uint64_t>(b)) EXPECT_LE(hi - lo, 1);
  }
  EXPECT_THROW(discretize_equal_frequency(std::vector<double>{}, 3), Error);
}

TEST(Entropy, Examples) {
  EXPECT_EQ(entropy(std::vector<int>{2, 2, 2}), 0.0);
  EXPECT_DOUBLE_EQ(entropy(std::vector<int>{1, 2, 1, 2}), 1.0);
  EXPECT_NEAR(entropy(testing::level_labels(5, 5, 5)), std::log2(3.0), 1e-15);
  EXPECT_THROW(entropy(std::vector<int>{}), Error);
}

TEST(InformationGain, PerfectAndConstant) {
  const auto labels = testing::level_labels(10, 10, 10);
  for (const int bins : {3, 5, 10}) {
    EXPECT_NEAR(information_gain(as_double(labels), labels, bins), std::log2(3.0), 1e-9);
  }
  EXPECT_EQ(information_gain(std::vector<double>(30, 1.0), labels, 10), 0.0);
}

TEST(InformationGain, IndependentFeature) {
  Rng rng(2024);
  std::vector<double> x;
  std::vector<int> y;
  for (int i = 0; i < 3000; ++i) {
    x.push_back(rng.normal());
    y.push_back(1 + static_cast<int>(rng.below(3)));
  }
  EXPECT_LT(information_gain(x, y, 10), 0.02);
  const auto rho = pearson(x, std::span<const int>(y));
  ASSERT_TRUE(rho.has_value());
  EXPECT_LT(std::abs(*rho), 0.05);
}

TEST(InformationGain, BoundsAndMonotoneInvariance) {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = 5 + rng.below(100);
    const int bins = 2 + static_cast<int>(rng.below(10));
    std::vector<double> x(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = 1 + static_cast<int>(rng.below(3));
      x[i] = std::round(4.0 * (y[i] + rng.normal())) / 4.0;
    }
    const double ig = information_gain(x, y, bins);
    EXPECT_GE(ig, 0.0);
    EXPECT_LE(ig, std::min(entropy(y), std::log2(bins)) + 1e-12);
    std::vector<double> warped(n);
    for (std::size_t i = 0; i < n; ++i) warped[i] = std::exp(0.7 * x[i]) - 3.0;
    EXPECT_EQ(information_gain(warped, y, bins), ig);
  }
}

TEST(Pearson, ExactAndUndefined) {
  const auto levels = testing::level_labels(7, 5, 9);
  auto x = as_double(levels);
  EXPECT_EQ(pearson(x, std::span<const int>(levels)), 1.0);
  for (auto& v : x) v = -v;
  EXPECT_EQ(pearson(x, std::span<const int>(levels)), -1.0);
  EXPECT_FALSE(pearson(std::vector<double>(21, 4.0), std::span<const int>(levels)).has_value());
  EXPECT_FALSE(pearson(x, std::span<const int>(std::vector<int>(21, 2))).has_value());
}

TEST(Pearson, AffineEquivariance) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 3 + rng.below(50);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.normal();
      y[i] = 0.3 * x[i] + rng.normal();
    }
    const double a = (rng.bernoulli(0.5) ? 1 : -1) * (0.1 + 10 * rng.uniform());
    const double b = 100 * rng.normal();
    std::vector<double> ax(n);
    for (std::size_t i = 0; i < n; ++i) ax[i] = a * x[i] + b;
    const double r = *pearson(x, y);
    EXPECT_NEAR(*pearson(ax, y), (a > 0 ? 1 : -1) * r, 1e-12);
  }
}

LabeledDataset planted_dataset(std::uint64_t seed) {
  LabeledDataset data;
  Rng rng(seed);
  for (const int level : testing::level_labels(30, 30, 30)) {
    Row row(kFeatureCount);
    for (auto& v : row) v = rng.normal();
    row[4] = level;
    data.rows.push_back(row);
    data.labels.push_back(level);
  }
  for (const auto name : kFeatureNames) data.feature_names.emplace_back(name);
  return data;
}

TEST(RankFeatures, PlantedFeatureFirst) {
  const auto data = planted_dataset(1);
  const auto report = rank_features(data, 10, 10);
  ASSERT_EQ(report.entries.size(), 10u);
  EXPECT_EQ(report.entries[0].feature, "phrase_count");
  EXPECT_EQ(report.entries[0].group, "TRAD");
  EXPECT_EQ(report.entries[0].rank, 1);
  EXPECT_NEAR(report.entries[0].info_gain, std::log2(3.0), 1e-9);
  EXPECT_EQ(report.entries[0].pearson_rho, 1.0);
  for (std::size_t i = 1; i < report.entries.size(); ++i) {
    EXPECT_GE(report.entries[i - 1].info_gain, report.entries[i].info_gain);
    EXPECT_EQ(report.entries[i].rank, static_cast<int>(i + 1));
  }
  EXPECT_EQ(rank_features(data, 10, 100).entries.size(), 15u);
}

TEST(RankFeatures, TieBreakers) {
  LabeledDataset data;
  data.labels = {1, 2, 3, 1, 2, 3};
  data.feature_names = {"a", "b", "c", "d"};
  for (int i = 0; i < 6; ++i) {
    data.rows.push_back({5.0, 1.0 * (i % 2), 1.0 * (i % 2), static_cast<double>(data.labels[static_cast<std::size_t>(i)])});
  }
  const auto r = rank_features(data, 2, 10);
  ASSERT_EQ(r.entries.size(), 4u);
  EXPECT_EQ(r.entries[0].feature, "d");
  EXPECT_EQ(r.entries[1].feature, "b");
  EXPECT_EQ(r.entries[2].feature, "c");
  EXPECT_EQ(r.entries[3].feature, "a");
  EXPECT_FALSE(r.entries[3].pearson_rho.has_value());
}

TEST(RankFeatures, Deterministic) {
  const auto a = rank_features(planted_dataset(9));
  const auto b = rank_features(planted_dataset(9));
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].feature, b.entries[i].feature);
    EXPECT_EQ(a.entries[i].info_gain, b.entries[i].info_gain);
    EXPECT_EQ(a.entries[i].pearson_rho, b.entries[i].pearson_rho);
  }
}

}  // namespace
}  // namespace basa
