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

#include "costbound/learners/random_forest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "costbound/common.h"

namespace costbound {

void ForestParams::validate() const {
  if (!(feature_ratio > 0.0 && feature_ratio <= 1.0)) {
    throw std::invalid_argument("feature_ratio must lie in (0, 1]");
  }
  if (min_split < 2) throw std::invalid_argument("min_split must be >= 2");
  if (min_leaf < 1) throw std::invalid_argument("min_leaf must be >= 1");
  if (n_trees < 1) throw std::invalid_argument("n_trees must be >= 1");
}

std::size_t ForestParams::features_per_split(std::size_t k) const {
  const auto m = static_cast<std::size_t>(std::ceil(feature_ratio * static_cast<double>(k) - 1e-9));
  return std::clamp<std::size_t>(m, 1, std::max<std::size_t>(k, 1));
}

void to_json(nlohmann::json& j, const ForestParams& p) {
  j = {{"feature_ratio", p.feature_ratio},
       {"min_split", p.min_split},
       {"min_leaf", p.min_leaf},
       {"n_trees", p.n_trees},
       {"bootstrap", p.bootstrap}};
  j["max_depth"] = p.max_depth ? nlohmann::json(*p.max_depth) : nlohmann::json(nullptr);
}

namespace {

struct Bag {
  std::vector<std::size_t> rows;
  std::vector<std::uint8_t> in_bag;
};

Bag draw_bag(std::size_t n, bool bootstrap, std::uint64_t seed) {
  Bag b;
  b.in_bag.assign(n, 0);
  b.rows.resize(n);
  if (!bootstrap) {
    for (std::size_t i = 0; i < n; ++i) {
      b.rows[i] = i;
      b.in_bag[i] = 1;
    }
    return b;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    b.rows[i] = pick(rng);
    b.in_bag[b.rows[i]] = 1;
  }
  return b;
}

TreeParams tree_params(const ForestParams& p, std::size_t k) {
  TreeParams t;
  t.min_split = p.min_split;
  t.min_leaf = p.min_leaf;
  t.max_depth = p.max_depth;
  t.max_features = p.features_per_split(k);
  return t;
}

}  // namespace

RandomForest RandomForest::fit_classifier(const Matrix& x, std::span<const int> y,
                                          std::size_t n_classes, const ForestParams& params,
                                          std::uint64_t seed, std::size_t jobs) {
  params.validate();
  if (x.rows() == 0) throw std::invalid_argument("cannot fit a forest on empty data");
  RandomForest f;
  f.task_ = TreeTask::classification;
  f.n_classes_ = n_classes;
  f.params_ = params;
  const std::size_t n = x.rows();
  const TreeParams tp = tree_params(params, x.cols());
  f.trees_.resize(params.n_trees);
  std::vector<std::vector<std::uint8_t>> bags(params.n_trees);
  parallel_for(params.n_trees, jobs, [&](std::size_t t) {
    Bag bag = draw_bag(n, params.bootstrap, derive_seed(seed, t, 0));
    f.trees_[t] = DecisionTree::fit_classifier(x, y, n_classes, tp, bag.rows,
                                               derive_seed(seed, t, 1));
    bags[t] = std::move(bag.in_bag);
  });
  f.oob_votes_.assign(n, std::vector<double>(n_classes, 0.0));
  f.oob_counts_.assign(n, 0.0);
  for (std::size_t t = 0; t < params.n_trees; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      if (bags[t][i]) continue;
      const int c = f.trees_[t].predict_class(x.row(i));
      f.oob_votes_[i][static_cast<std::size_t>(c)] += 1.0;
      f.oob_counts_[i] += 1.0;
    }
  }
  return f;
}

RandomForest RandomForest::fit_regressor(const Matrix& x, std::span<const double> y,
                                         const ForestParams& params, std::uint64_t seed,
                                         std::size_t jobs) {
  params.validate();
  if (x.rows() == 0) throw std::invalid_argument("cannot fit a forest on empty data");
  RandomForest f;
  f.task_ = TreeTask::regression;
  f.params_ = params;
  const std::size_t n = x.rows();
  const TreeParams tp = tree_params(params, x.cols());
  f.trees_.resize(params.n_trees);
  std::vector<std::vector<std::uint8_t>> bags(params.n_trees);
  parallel_for(params.n_trees, jobs, [&](std::size_t t) {
    Bag bag = draw_bag(n, params.bootstrap, derive_seed(seed, t, 0));
    f.trees_[t] = DecisionTree::fit_regressor(x, y, tp, bag.rows, derive_seed(seed, t, 1));
    bags[t] = std::move(bag.in_bag);
  });
  f.oob_votes_.assign(n, std::vector<double>(1, 0.0));
  f.oob_counts_.assign(n, 0.0);
  for (std::size_t t = 0; t < params.n_trees; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      if (bags[t][i]) continue;
      f.oob_votes_[i][0] += f.trees_[t].predict_value(x.row(i));
      f.oob_counts_[i] += 1.0;
    }
  }
  return f;
}

std::vector<double> RandomForest::vote_fractions(std::span<const double> x) const {
  std::vector<double> votes(n_classes_, 0.0);
  for (const DecisionTree& t : trees_) votes[static_cast<std::size_t>(t.predict_class(x))] += 1.0;
  for (double& v : votes) v /= static_cast<double>(trees_.size());
  return votes;
}

int RandomForest::predict_class(std::span<const double> x) const {
  const auto votes = vote_fractions(x);
  return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

double RandomForest::predict_value(std::span<const double> x) const {
  double sum = 0.0;
  for (const DecisionTree& t : trees_) sum += t.predict_value(x);
  return sum / static_cast<double>(trees_.size());
}

std::vector<int> RandomForest::oob_classes() const {
  std::vector<int> out(oob_votes_.size(), -1);
  if (task_ != TreeTask::classification) return out;
  for (std::size_t i = 0; i < oob_votes_.size(); ++i) {
    if (oob_counts_[i] == 0.0) continue;
    const auto& v = oob_votes_[i];
    out[i] = static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
  }
  return out;
}

std::vector<double> RandomForest::oob_vote_fraction(int c) const {
  std::vector<double> out(oob_votes_.size(), kUndefined);
  if (task_ != TreeTask::classification) return out;
  for (std::size_t i = 0; i < oob_votes_.size(); ++i) {
    if (oob_counts_[i] > 0.0) out[i] = oob_votes_[i][static_cast<std::size_t>(c)] / oob_counts_[i];
  }
  return out;
}

std::vector<double> RandomForest::oob_values() const {
  std::vector<double> out(oob_votes_.size(), kUndefined);
  if (task_ != TreeTask::regression) return out;
  for (std::size_t i = 0; i < oob_votes_.size(); ++i) {
    if (oob_counts_[i] > 0.0) out[i] = oob_votes_[i][0] / oob_counts_[i];
  }
  return out;
}

nlohmann::json RandomForest::to_json() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const DecisionTree& t : trees_) trees.push_back(t.to_json());
  return {{"format_version", 1},
          {"task", task_ == TreeTask::classification ? "classification" : "regression"},
          {"n_classes", n_classes_},
          {"params", params_},
          {"trees", std::move(trees)}};
}

std::vector<double> gini_importance(const RandomForest& forest) {
  if (forest.trees().empty()) return {};
  std::vector<double> sum(forest.trees().front().n_features(), 0.0);
  for (const DecisionTree& t : forest.trees()) {
    const auto imp = gini_importance(t);
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += imp[j];
  }
  for (double& v : sum) v /= static_cast<double>(forest.trees().size());
  return sum;
}

}  // namespace costbound
