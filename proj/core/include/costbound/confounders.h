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

#ifndef COSTBOUND_CONFOUNDERS_H_
#define COSTBOUND_CONFOUNDERS_H_

#include <array>
#include <span>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "costbound/common.h"
#include "costbound/release.h"

namespace costbound {

// Instance counts of a training set, duplicates included.
struct TrainingSummary {
  std::size_t instances = 0;
  std::size_t defective = 0;

  double bias() const { return safe_ratio(static_cast<double>(defective), static_cast<double>(instances)); }
};

struct ConfounderVector {
  double bias_train = kUndefined;
  double bias_train_prime = kUndefined;
  double bias_test = kUndefined;
  double ratio_bias = kUndefined;
  double ratio_bias_prime = kUndefined;
  double prop_def_1pct = kUndefined;
  double prop_clean_1pct = kUndefined;
  double n_train = kUndefined;
  double n_train_prime = kUndefined;
  double n_test = kUndefined;

  static constexpr std::size_t kCount = 10;
  static const std::array<std::string_view, kCount> kNames;

  std::array<double, kCount> values() const;
  static ConfounderVector from_values(std::span<const double> values);
};

void to_json(nlohmann::json& j, const ConfounderVector& c);
void from_json(const nlohmann::json& j, ConfounderVector& c);

// Size share of the ceil(1%) largest artifacts within `sizes`; NaN when the
// set is empty or its total size is zero.
double largest_one_percent_share(std::span<const std::int64_t> sizes);

// `train_after` describes the training data after pre-processing such as
// oversampling; pass `train` again when there was none.
ConfounderVector compute_confounders(const TrainingSummary& train,
                                     const TrainingSummary& train_after,
                                     const EvaluationView& test);

}  // namespace costbound

#endif  // COSTBOUND_CONFOUNDERS_H_
