/*
 * Copyright 2026 The costbound Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "costbound/confounders.h"
#include "costbound/metrics.h"
#include "fixtures.h"

namespace costbound {
namespace {

using testing::t1_prediction;
using testing::t1_view;

TEST(TrainingSummary, Bias) {
  EXPECT_DOUBLE_EQ((TrainingSummary{10, 2}).bias(), 0.2);
  EXPECT_TRUE(is_undefined((TrainingSummary{0, 0}).bias()));
}

TEST(LargestOnePercentShare, Examples) {
  const std::vector<std::int64_t> sizes = {100, 200, 40};
  EXPECT_DOUBLE_EQ(largest_one_percent_share(sizes), 200.0 / 340.0);
  EXPECT_TRUE(is_undefined(largest_one_percent_share(std::vector<std::int64_t>{})));
  EXPECT_TRUE(is_undefined(largest_one_percent_share(std::vector<std::int64_t>{0, 0})));
}

TEST(LargestOnePercentShare, UniformSizes) {
  for (std::size_t n : {1, 7, 99, 100, 101, 250, 1000}) {
    const std::vector<std::int64_t> sizes(n, 13);
    const double k = std::ceil(0.01 * static_cast<double>(n));
    EXPECT_DOUBLE_EQ(largest_one_percent_share(sizes), k / static_cast<double>(n)) << n;
  }
}

TEST(LargestOnePercentShare, MonotoneInLargestSize) {
  std::mt19937_64 rng(9);
  std::vector<std::int64_t> sizes(150);
  for (auto& s : sizes) s = static_cast<std::int64_t>(1 + rng() % 500);
  auto largest = std::max_element(sizes.begin(), sizes.end());
  double previous = largest_one_percent_share(sizes);
  for (int step = 0; step < 20; ++step) {
    *largest += 100;
    const double share = largest_one_percent_share(sizes);
    EXPECT_GE(share, previous);
    previous = share;
  }
}

TEST(ComputeConfounders, T1) {
  const auto view = t1_view();
  const ConfounderVector c = compute_confounders({10, 2}, {16, 8}, view);
  EXPECT_DOUBLE_EQ(c.bias_train, 0.2);
  EXPECT_DOUBLE_EQ(c.bias_train_prime, 0.5);
  EXPECT_DOUBLE_EQ(c.bias_test, 0.5);
  EXPECT_DOUBLE_EQ(c.ratio_bias, 2.5);
  EXPECT_DOUBLE_EQ(c.ratio_bias_prime, 0.5 / 0.5);
  EXPECT_DOUBLE_EQ(c.prop_def_1pct, 200.0 / 340.0);
  EXPECT_DOUBLE_EQ(c.prop_clean_1pct, 600.0 / 660.0);
  EXPECT_EQ(c.n_train, 10.0);
  EXPECT_EQ(c.n_train_prime, 16.0);
  EXPECT_EQ(c.n_test, 6.0);
  EXPECT_EQ(c.n_test, static_cast<double>(confusion_counts(view, t1_prediction()).total()));
}

TEST(ComputeConfounders, UndefinedMarkers) {
  const auto clean = EvaluationView::create({"a", "b"}, {10, 20}, {});
  const ConfounderVector c = compute_confounders({5, 0}, {5, 0}, clean);
  EXPECT_TRUE(is_undefined(c.ratio_bias));
  EXPECT_TRUE(is_undefined(c.ratio_bias_prime));
  EXPECT_TRUE(is_undefined(c.prop_def_1pct));
  EXPECT_DOUBLE_EQ(c.prop_clean_1pct, 20.0 / 30.0);
  EXPECT_EQ(c.bias_test, 0.0);
}

TEST(ConfounderVector, JsonRoundTrip) {
  const ConfounderVector c = compute_confounders({5, 0}, {5, 0}, EvaluationView::create({"a"}, {3}, {}));
  const nlohmann::json j = c;
  EXPECT_EQ(j.size(), ConfounderVector::kCount);
  EXPECT_TRUE(j.at("ratio_bias").is_null());
  const ConfounderVector back = j.get<ConfounderVector>();
  const auto a = c.values();
  const auto b = back.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE((std::isnan(a[i]) && std::isnan(b[i])) || a[i] == b[i]) << ConfounderVector::kNames[i];
  }
}

}  // namespace
}  // namespace costbound
