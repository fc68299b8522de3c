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

#include "costbound/confounders.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace costbound {

const std::array<std::string_view, ConfounderVector::kCount> ConfounderVector::kNames = {
    "bias_train",    "bias_train_prime", "bias_test", "ratio_bias",
    "ratio_bias_prime", "prop_def_1pct", "prop_clean_1pct", "n_train",
    "n_train_prime", "n_test"};

std::array<double, ConfounderVector::kCount> ConfounderVector::values() const {
  return {bias_train, bias_train_prime, bias_test,     ratio_bias,    ratio_bias_prime,
          prop_def_1pct, prop_clean_1pct, n_train, n_train_prime, n_test};
}

ConfounderVector ConfounderVector::from_values(std::span<const double> v) {
  if (v.size() != kCount) throw std::invalid_argument("ConfounderVector needs 10 values");
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]};
}

void to_json(nlohmann::json& j, const ConfounderVector& c) {
  j = nlohmann::json::object();
  const auto v = c.values();
  for (std::size_t i = 0; i < ConfounderVector::kCount; ++i) {
    j[std::string(ConfounderVector::kNames[i])] =
        std::isnan(v[i]) ? nlohmann::json(nullptr) : nlohmann::json(v[i]);
  }
}

void from_json(const nlohmann::json& j, ConfounderVector& c) {
  std::array<double, ConfounderVector::kCount> v;
  for (std::size_t i = 0; i < ConfounderVector::kCount; ++i) {
    const auto& e = j.at(std::string(ConfounderVector::kNames[i]));
    v[i] = e.is_null() ? kUndefined : e.get<double>();
  }
  c = ConfounderVector::from_values(v);
}

double largest_one_percent_share(std::span<const std::int64_t> sizes) {
  if (sizes.empty()) return kUndefined;
  std::vector<std::int64_t> sorted(sizes.begin(), sizes.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t top = (sorted.size() + 99) / 100;  // ceil(0.01 * n)
  const auto total = std::accumulate(sorted.begin(), sorted.end(), std::int64_t{0});
  const auto largest = std::accumulate(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(top),
                                       std::int64_t{0});
  return safe_ratio(static_cast<double>(largest), static_cast<double>(total));
}

ConfounderVector compute_confounders(const TrainingSummary& train,
                                     const TrainingSummary& train_after,
                                     const EvaluationView& test) {
  ConfounderVector c;
  c.bias_train = train.bias();
  c.bias_train_prime = train_after.bias();
  c.bias_test = safe_ratio(static_cast<double>(test.defective_count()),
                           static_cast<double>(test.size()));
  c.ratio_bias = c.bias_train > 0.0 ? c.bias_test / c.bias_train : kUndefined;
  c.ratio_bias_prime = c.bias_train_prime > 0.0 ? c.bias_test / c.bias_train_prime : kUndefined;

  std::vector<std::int64_t> defective_sizes, clean_sizes;
  for (std::size_t i = 0; i < test.size(); ++i) {
    (test.defective[i] ? defective_sizes : clean_sizes).push_back(test.sizes[i]);
  }
  c.prop_def_1pct = largest_one_percent_share(defective_sizes);
  c.prop_clean_1pct = largest_one_percent_share(clean_sizes);
  c.n_train = static_cast<double>(train.instances);
  c.n_train_prime = static_cast<double>(train_after.instances);
  c.n_test = static_cast<double>(test.size());
  return c;
}

}  // namespace costbound
