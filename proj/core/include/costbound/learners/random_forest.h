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

#ifndef COSTBOUND_LEARNERS_RANDOM_FOREST_H_
#define COSTBOUND_LEARNERS_RANDOM_FOREST_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "costbound/learners/decision_tree.h"
#include "costbound/learners/matrix.h"

namespace costbound {

struct ForestParams {
  double feature_ratio = 0.5;  // share of features tried at each split
  std::size_t min_split = 2;
  std::size_t min_leaf = 1;
  std::size_t n_trees = 100;
  std::optional<std::size_t> max_depth;  // unlimited by default
  bool bootstrap = true;

  // Throws std::invalid_argument.
  void validate() const;
  // max(1, ceil(feature_ratio * k)).
  std::size_t features_per_split(std::size_t k) const;
};

void to_json(nlohmann::json& j, const ForestParams& p);

// Bagged CART ensemble. Classification votes by majority (ties go to the
// lower class index); regression averages the trees. Out-of-bag votes are
// collected while fitting.
class RandomForest {
 public:
  static RandomForest fit_classifier(const Matrix& x, std::span<const int> y,
                                     std::size_t n_classes, const ForestParams& params,
                                     std::uint64_t seed, std::size_t jobs = 1);
  static RandomForest fit_regressor(const Matrix& x, std::span<const double> y,
                                    const ForestParams& params, std::uint64_t seed,
                                    std::size_t jobs = 1);

  TreeTask task() const { return task_; }
  std::size_t n_classes() const { return n_classes_; }
  const ForestParams& params() const { return params_; }
  const std::vector<DecisionTree>& trees() const { return trees_; }

  // Fraction of trees voting for each class.
  std::vector<double> vote_fractions(std::span<const double> x) const;
  int predict_class(std::span<const double> x) const;
  double predict_value(std::span<const double> x) const;

  // Out-of-bag majority class per training row, or -1 if the row was in every
  // bag. Classification only.
  std::vector<int> oob_classes() const;
  // Out-of-bag vote fraction for class `c`, NaN for rows never out of bag.
  std::vector<double> oob_vote_fraction(int c) const;
  // Out-of-bag mean prediction per row, NaN when never out of bag.
  std::vector<double> oob_values() const;

  nlohmann::json to_json() const;

 private:
  TreeTask task_ = TreeTask::classification;
  std::size_t n_classes_ = 0;
  ForestParams params_;
  std::vector<DecisionTree> trees_;
  std::vector<std::vector<double>> oob_votes_;  // [row][class] or [row] = {sum}
  std::vector<double> oob_counts_;
};

// Per-tree importances averaged over the forest.
std::vector<double> gini_importance(const RandomForest& forest);

}  // namespace costbound

#endif  // COSTBOUND_LEARNERS_RANDOM_FOREST_H_
