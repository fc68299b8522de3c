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

#include "costbound/learners/decision_tree.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace costbound {

double gini_impurity(std::span<const double> counts) {
  const double n = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (n <= 0.0) return 0.0;
  double sum_sq = 0.0;
  for (double c : counts) sum_sq += c * c;
  return 1.0 - sum_sq / (n * n);
}

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, const TreeParams& params, std::uint64_t seed,
              DecisionTree& tree)
      : x_(x), params_(params), rng_(seed), tree_(tree) {
    features_.resize(x.cols());
    std::iota(features_.begin(), features_.end(), std::size_t{0});
  }

  void set_classes(std::span<const int> y, std::size_t k) {
    labels_ = y;
    classes_ = k;
  }
  void set_targets(std::span<const double> y) { targets_ = y; }

  void build(std::vector<std::size_t> rows) { grow(std::move(rows), 0); }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double child_impurity = 0.0;  // weighted mean impurity of the children
  };

  bool classification() const { return tree_.task_ == TreeTask::classification; }

  int grow(std::vector<std::size_t> rows, std::size_t depth) {
    const int id = static_cast<int>(tree_.nodes_.size());
    tree_.nodes_.emplace_back();
    {
      TreeNode& node = tree_.nodes_.back();
      node.samples = rows.size();
      if (classification()) {
        node.distribution.assign(classes_, 0.0);
        for (std::size_t r : rows) node.distribution[static_cast<std::size_t>(labels_[r])] += 1.0;
        node.impurity = gini_impurity(node.distribution);
      } else {
        double sum = 0.0, sum_sq = 0.0;
        for (std::size_t r : rows) {
          sum += targets_[r];
          sum_sq += targets_[r] * targets_[r];
        }
        const double n = static_cast<double>(rows.size());
        node.value = sum / n;
        node.impurity = std::max(0.0, sum_sq / n - node.value * node.value);
      }
    }
    const double impurity = tree_.nodes_[static_cast<std::size_t>(id)].impurity;
    const bool depth_ok = !params_.max_depth || depth < *params_.max_depth;
    if (!depth_ok || rows.size() < params_.min_split ||
        rows.size() < 2 * params_.min_leaf || impurity <= 0.0) {
      return id;
    }
    const Split best = find_split(rows);
    if (best.feature < 0 || !(impurity - best.child_impurity > 1e-12 * std::max(1.0, impurity))) {
      return id;
    }
    std::vector<std::size_t> left, right;
    for (std::size_t r : rows) {
      (x_(r, static_cast<std::size_t>(best.feature)) <= best.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int l = grow(std::move(left), depth + 1);
    const int rgt = grow(std::move(right), depth + 1);
    TreeNode& node = tree_.nodes_[static_cast<std::size_t>(id)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = l;
    node.right = rgt;
    return id;
  }

  Split find_split(const std::vector<std::size_t>& rows) {
    const std::size_t k = x_.cols();
    std::size_t tries = k;
    if (params_.max_features > 0 && params_.max_features < k) {
      tries = params_.max_features;
      // Partial Fisher-Yates: the first `tries` entries are the sample.
      for (std::size_t i = 0; i < tries; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, k - 1);
        std::swap(features_[i], features_[pick(rng_)]);
      }
    } else {
      std::iota(features_.begin(), features_.end(), std::size_t{0});
    }
    Split best;
    best.child_impurity = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < tries; ++t) {
      const std::size_t f = features_[t];
      if (classification()) {
        scan_classification(rows, f, best);
      } else {
        scan_regression(rows, f, best);
      }
    }
    return best;
  }

  void sort_by_feature(const std::vector<std::size_t>& rows, std::size_t f) {
    order_.assign(rows.begin(), rows.end());
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return x_(a, f) < x_(b, f);
    });
  }

  static double threshold_between(double lo, double hi) {
    const double mid = lo + (hi - lo) / 2.0;
    return mid < hi ? mid : lo;
  }

  void scan_classification(const std::vector<std::size_t>& rows, std::size_t f, Split& best) {
    sort_by_feature(rows, f);
    const std::size_t n = order_.size();
    left_counts_.assign(classes_, 0.0);
    right_counts_.assign(classes_, 0.0);
    for (std::size_t r : order_) right_counts_[static_cast<std::size_t>(labels_[r])] += 1.0;
    double left_sq = 0.0;
    double right_sq = 0.0;
    for (double c : right_counts_) right_sq += c * c;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto c = static_cast<std::size_t>(labels_[order_[i]]);
      left_sq += 2.0 * left_counts_[c] + 1.0;
      left_counts_[c] += 1.0;
      right_sq -= 2.0 * right_counts_[c] - 1.0;
      right_counts_[c] -= 1.0;
      const double lo = x_(order_[i], f);
      const double hi = x_(order_[i + 1], f);
      if (!(lo < hi)) continue;
      const std::size_t nl = i + 1;
      const std::size_t nr = n - nl;
      if (nl < params_.min_leaf || nr < params_.min_leaf) continue;
      const double dl = static_cast<double>(nl);
      const double dr = static_cast<double>(nr);
      const double weighted = ((dl - left_sq / dl) + (dr - right_sq / dr)) / static_cast<double>(n);
      if (weighted < best.child_impurity) {
        best.child_impurity = weighted;
        best.feature = static_cast<int>(f);
        best.threshold = threshold_between(lo, hi);
      }
    }
  }

  void scan_regression(const std::vector<std::size_t>& rows, std::size_t f, Split& best) {
    sort_by_feature(rows, f);
    const std::size_t n = order_.size();
    double total = 0.0, total_sq = 0.0;
    for (std::size_t r : order_) {
      total += targets_[r];
      total_sq += targets_[r] * targets_[r];
    }
    double left = 0.0, left_sq = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double v = targets_[order_[i]];
      left += v;
      left_sq += v * v;
      const double lo = x_(order_[i], f);
      const double hi = x_(order_[i + 1], f);
      if (!(lo < hi)) continue;
      const std::size_t nl = i + 1;
      const std::size_t nr = n - nl;
      if (nl < params_.min_leaf || nr < params_.min_leaf) continue;
      const double dl = static_cast<double>(nl);
      const double dr = static_cast<double>(nr);
      const double right = total - left;
      const double right_sq = total_sq - left_sq;
      const double sse = std::max(0.0, left_sq - left * left / dl) +
                         std::max(0.0, right_sq - right * right / dr);
      const double weighted = sse / static_cast<double>(n);
      if (weighted < best.child_impurity) {
        best.child_impurity = weighted;
        best.feature = static_cast<int>(f);
        best.threshold = threshold_between(lo, hi);
      }
    }
  }

  const Matrix& x_;
  const TreeParams& params_;
  std::mt19937_64 rng_;
  DecisionTree& tree_;
  std::span<const int> labels_;
  std::span<const double> targets_;
  std::size_t classes_ = 0;
  std::vector<std::size_t> features_;
  std::vector<std::size_t> order_;
  std::vector<double> left_counts_;
  std::vector<double> right_counts_;
};

namespace {

std::vector<std::size_t> resolve_rows(std::span<const std::size_t> rows, std::size_t n) {
  if (!rows.empty()) {
    for (std::size_t r : rows) {
      if (r >= n) throw std::out_of_range("tree training row out of range");
    }
    return {rows.begin(), rows.end()};
  }
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

void check_params(const TreeParams& p) {
  if (p.min_split < 2) throw std::invalid_argument("min_split must be >= 2");
  if (p.min_leaf < 1) throw std::invalid_argument("min_leaf must be >= 1");
}

}  // namespace

DecisionTree DecisionTree::fit_classifier(const Matrix& x, std::span<const int> y,
                                          std::size_t n_classes, const TreeParams& params,
                                          std::span<const std::size_t> rows,
                                          std::uint64_t seed) {
  if (x.rows() == 0) throw std::invalid_argument("cannot fit a tree on empty data");
  if (y.size() != x.rows()) throw std::invalid_argument("label count mismatch");
  if (n_classes == 0) throw std::invalid_argument("n_classes must be positive");
  for (int c : y) {
    if (c < 0 || static_cast<std::size_t>(c) >= n_classes) {
      throw std::invalid_argument("class label out of range");
    }
  }
  check_params(params);
  DecisionTree tree;
  tree.task_ = TreeTask::classification;
  tree.n_classes_ = n_classes;
  tree.n_features_ = x.cols();
  TreeBuilder builder(x, params, seed, tree);
  builder.set_classes(y, n_classes);
  builder.build(resolve_rows(rows, x.rows()));
  return tree;
}

DecisionTree DecisionTree::fit_regressor(const Matrix& x, std::span<const double> y,
                                         const TreeParams& params,
                                         std::span<const std::size_t> rows,
                                         std::uint64_t seed) {
  if (x.rows() == 0) throw std::invalid_argument("cannot fit a tree on empty data");
  if (y.size() != x.rows()) throw std::invalid_argument("target count mismatch");
  check_params(params);
  DecisionTree tree;
  tree.task_ = TreeTask::regression;
  tree.n_features_ = x.cols();
  TreeBuilder builder(x, params, seed, tree);
  builder.set_targets(y);
  builder.build(resolve_rows(rows, x.rows()));
  return tree;
}

const TreeNode& DecisionTree::leaf_for(std::span<const double> x) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& n = nodes_[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                        : n.right);
  }
  return nodes_[i];
}

int DecisionTree::predict_class(std::span<const double> x) const {
  const auto& d = leaf_for(x).distribution;
  return static_cast<int>(std::max_element(d.begin(), d.end()) - d.begin());
}

std::vector<double> DecisionTree::predict_proba(std::span<const double> x) const {
  const TreeNode& leaf = leaf_for(x);
  std::vector<double> p = leaf.distribution;
  const double n = static_cast<double>(leaf.samples);
  for (double& v : p) v /= n;
  return p;
}

double DecisionTree::predict_value(std::span<const double> x) const {
  return leaf_for(x).value;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> d(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (!nodes_[i].is_leaf()) {
      d[static_cast<std::size_t>(nodes_[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes_[i].right)] = d[i] + 1;
    }
  }
  return deepest;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::vector<double> DecisionTree::impurity_decrease() const {
  std::vector<double> dec(n_features_, 0.0);
  for (const TreeNode& n : nodes_) {
    if (n.is_leaf()) continue;
    const TreeNode& l = nodes_[static_cast<std::size_t>(n.left)];
    const TreeNode& r = nodes_[static_cast<std::size_t>(n.right)];
    dec[static_cast<std::size_t>(n.feature)] +=
        static_cast<double>(n.samples) * n.impurity -
        static_cast<double>(l.samples) * l.impurity -
        static_cast<double>(r.samples) * r.impurity;
  }
  return dec;
}

std::vector<double> gini_importance(const DecisionTree& tree) {
  std::vector<double> imp = tree.impurity_decrease();
  const double total = std::accumulate(imp.begin(), imp.end(), 0.0);
  if (total > 0.0) {
    for (double& v : imp) v /= total;
  } else {
    std::fill(imp.begin(), imp.end(), 0.0);
  }
  return imp;
}

nlohmann::json DecisionTree::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const TreeNode& n : nodes_) {
    nlohmann::json j = {{"samples", n.samples}, {"impurity", n.impurity}};
    if (!n.is_leaf()) {
      j["feature"] = n.feature;
      j["threshold"] = n.threshold;
      j["left"] = n.left;
      j["right"] = n.right;
    }
    if (task_ == TreeTask::classification) {
      j["distribution"] = n.distribution;
    } else {
      j["value"] = n.value;
    }
    nodes.push_back(std::move(j));
  }
  return {{"format_version", 1},
          {"task", task_ == TreeTask::classification ? "classification" : "regression"},
          {"n_classes", n_classes_},
          {"n_features", n_features_},
          {"nodes", std::move(nodes)}};
}

DecisionTree DecisionTree::from_json(const nlohmann::json& j) {
  if (j.at("format_version").get<int>() != 1) {
    throw std::invalid_argument("unsupported tree format version");
  }
  DecisionTree t;
  t.task_ = j.at("task").get<std::string>() == "classification" ? TreeTask::classification
                                                                 : TreeTask::regression;
  t.n_classes_ = j.at("n_classes").get<std::size_t>();
  t.n_features_ = j.at("n_features").get<std::size_t>();
  for (const auto& nj : j.at("nodes")) {
    TreeNode n;
    n.samples = nj.at("samples").get<std::size_t>();
    n.impurity = nj.at("impurity").get<double>();
    if (nj.contains("feature")) {
      n.feature = nj.at("feature").get<int>();
      n.threshold = nj.at("threshold").get<double>();
      n.left = nj.at("left").get<int>();
      n.right = nj.at("right").get<int>();
    }
    if (nj.contains("distribution")) n.distribution = nj.at("distribution").get<std::vector<double>>();
    if (nj.contains("value")) n.value = nj.at("value").get<double>();
    t.nodes_.push_back(std::move(n));
  }
  return t;
}

bool DecisionTree::operator==(const DecisionTree& other) const {
  if (task_ != other.task_ || n_classes_ != other.n_classes_ ||
      n_features_ != other.n_features_ || nodes_.size() != other.nodes_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const TreeNode& a = nodes_[i];
    const TreeNode& b = other.nodes_[i];
    if (a.feature != b.feature || a.threshold != b.threshold || a.left != b.left ||
        a.right != b.right || a.samples != b.samples || a.distribution != b.distribution ||
        a.value != b.value) {
      return false;
    }
  }
  return true;
}

}  // namespace costbound
