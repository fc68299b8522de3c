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

#ifndef COSTBOUND_LEARNERS_DECISION_TREE_H_
#define COSTBOUND_LEARNERS_DECISION_TREE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "costbound/learners/matrix.h"

namespace costbound {

enum class TreeTask { classification, regression };

struct TreeParams {
  std::size_t min_split = 2;
  std::size_t min_leaf = 1;
  std::optional<std::size_t> max_depth;  // root has depth 0
  std::size_t max_features = 0;          // features tried per split; 0 = all
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // samples with x[feature] <= threshold go left
  int left = -1;
  int right = -1;
  std::size_t samples = 0;
  double impurity = 0.0;  // Gini, or variance for regression
  std::vector<double> distribution;  // class counts at the node
  double value = 0.0;                // mean target at the node

  bool is_leaf() const { return feature < 0; }
};

// CART with Gini impurity (classification) or variance (regression). Splits
// are greedy, take the largest impurity decrease, and are only made when
// that decrease is strictly positive. Ties keep the first candidate in
// feature order, then the lowest threshold.
class DecisionTree {
 public:
  // `rows` selects (possibly repeated) training rows; empty means all rows.
  // `seed` only matters when max_features < number of features.
  static DecisionTree fit_classifier(const Matrix& x, std::span<const int> y,
                                     std::size_t n_classes, const TreeParams& params,
                                     std::span<const std::size_t> rows = {},
                                     std::uint64_t seed = 0);
  static DecisionTree fit_regressor(const Matrix& x, std::span<const double> y,
                                    const TreeParams& params,
                                    std::span<const std::size_t> rows = {},
                                    std::uint64_t seed = 0);

  TreeTask task() const { return task_; }
  std::size_t n_classes() const { return n_classes_; }
  std::size_t n_features() const { return n_features_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }

  const TreeNode& leaf_for(std::span<const double> x) const;
  int predict_class(std::span<const double> x) const;
  std::vector<double> predict_proba(std::span<const double> x) const;
  double predict_value(std::span<const double> x) const;

  std::size_t depth() const;
  std::size_t leaf_count() const;

  // Sample-weighted impurity decrease summed per feature, not normalized.
  std::vector<double> impurity_decrease() const;

  nlohmann::json to_json() const;
  static DecisionTree from_json(const nlohmann::json& j);

  bool operator==(const DecisionTree& other) const;

 private:
  friend class TreeBuilder;
  TreeTask task_ = TreeTask::classification;
  std::size_t n_classes_ = 0;
  std::size_t n_features_ = 0;
  std::vector<TreeNode> nodes_;
};

// Gini (or variance) importance normalized to sum 1; all zeros for a tree
// without splits.
std::vector<double> gini_importance(const DecisionTree& tree);

// Gini impurity of a class-count vector.
double gini_impurity(std::span<const double> counts);

}  // namespace costbound

#endif  // COSTBOUND_LEARNERS_DECISION_TREE_H_
