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
#include <numeric>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "costbound/learners/decision_tree.h"
#include "costbound/learners/differential_evolution.h"
#include "costbound/learners/logit.h"
#include "costbound/learners/matrix.h"
#include "costbound/learners/naive_bayes.h"
#include "costbound/learners/random_forest.h"
#include "costbound/learners/smote.h"
#include "costbound/learners/spearman.h"

namespace costbound {
namespace {

struct Data {
  Matrix x;
  std::vector<int> y;
};

// Two Gaussian classes separated along every feature by `gap`.
Data blobs(std::size_t n, std::size_t k, double gap, std::uint64_t seed, std::size_t classes = 2) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Data d{Matrix(n, k), std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const int c = static_cast<int>(i % classes);
    d.y[i] = c;
    for (std::size_t j = 0; j < k; ++j) {
      const double centre = (j % classes == static_cast<std::size_t>(c)) ? gap : 0.0;
      d.x(i, j) = centre + noise(rng);
    }
  }
  return d;
}

// Labels depend on feature 3 only; the other features are noise.
Data feature_three(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Data d{Matrix(n, 6), std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < 6; ++j) d.x(i, j) = u(rng);
    d.y[i] = d.x(i, 3) > 0.4 ? 1 : 0;
  }
  return d;
}

TEST(Matrix, RowsColumnsAndSelection) {
  Matrix m = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(m.rows(), 2U);
  EXPECT_EQ(m.cols(), 3U);
  EXPECT_EQ(m.column(1), (std::vector<double>{2, 5}));
  const std::vector<double> extra = {7, 8, 9};
  m.append_row(extra);
  EXPECT_EQ(m(2, 0), 7.0);
  const std::vector<std::size_t> rows = {2, 0, 2};
  EXPECT_EQ(m.select_rows(rows), Matrix::from_rows({{7, 8, 9}, {1, 2, 3}, {7, 8, 9}}));
  const std::vector<std::size_t> cols = {2, 0};
  EXPECT_EQ(m.select_columns(cols), Matrix::from_rows({{3, 1}, {6, 4}, {9, 7}}));
  Matrix empty;
  empty.append_row(extra);
  EXPECT_EQ(empty.cols(), 3U);
}

TEST(GiniImpurity, Values) {
  EXPECT_EQ(gini_impurity(std::vector<double>{5, 0}), 0.0);
  EXPECT_DOUBLE_EQ(gini_impurity(std::vector<double>{5, 5}), 0.5);
  EXPECT_DOUBLE_EQ(gini_impurity(std::vector<double>{1, 1, 1}), 2.0 / 3);
}

TEST(DecisionTree, SingleClassIsOneLeaf) {
  const Matrix x = Matrix::from_rows({{1}, {2}, {3}});
  const std::vector<int> y = {1, 1, 1};
  const auto tree = DecisionTree::fit_classifier(x, y, 2, {});
  EXPECT_EQ(tree.nodes().size(), 1U);
  EXPECT_EQ(tree.predict_class(std::vector<double>{10}), 1);
  EXPECT_EQ(gini_importance(tree), (std::vector<double>{0.0}));
}

TEST(DecisionTree, PerfectOneDimensionalSplit) {
  const Matrix x = Matrix::from_rows({{0.0}, {0.25}, {0.75}, {1.0}});
  const std::vector<int> y = {0, 0, 1, 1};
  const auto tree = DecisionTree::fit_classifier(x, y, 2, {});
  ASSERT_EQ(tree.nodes().size(), 3U);
  EXPECT_EQ(tree.depth(), 1U);
  EXPECT_EQ(tree.nodes()[0].feature, 0);
  EXPECT_EQ(tree.nodes()[0].threshold, 0.5);
  // Exhaustive scan: 0.5 is the only midpoint giving pure children.
  const double candidates[] = {0.125, 0.5, 0.875};
  for (double t : candidates) {
    int left_pos = 0, left = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (x(i, 0) <= t) {
        ++left;
        left_pos += y[i];
      }
    }
    const bool pure = left_pos == 0 && left == 2;
    EXPECT_EQ(pure, t == 0.5);
  }
  EXPECT_EQ(gini_importance(tree), (std::vector<double>{1.0}));
}

TEST(DecisionTree, DepthLimitBoundsLeaves) {
  const Data d = feature_three(400, 1);
  std::mt19937_64 rng(2);
  std::vector<int> noisy = d.y;
  for (int& v : noisy) v = static_cast<int>(rng() % 3);
  TreeParams p;
  p.max_depth = 5;
  const auto tree = DecisionTree::fit_classifier(d.x, noisy, 3, p);
  EXPECT_LE(tree.depth(), 5U);
  EXPECT_LE(tree.leaf_count(), 32U);
}

TEST(DecisionTree, SplitsStrictlyDecreaseImpurityAndPartitionSamples) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Data d = blobs(200, 4, 1.0, seed);
    TreeParams p;
    p.min_leaf = 3;
    const auto tree = DecisionTree::fit_classifier(d.x, d.y, 2, p);
    for (const TreeNode& node : tree.nodes()) {
      const double total = std::accumulate(node.distribution.begin(), node.distribution.end(), 0.0);
      EXPECT_EQ(total, static_cast<double>(node.samples));
      if (node.is_leaf()) {
        EXPECT_GE(node.samples, 3U);
        continue;
      }
      const TreeNode& l = tree.nodes()[static_cast<std::size_t>(node.left)];
      const TreeNode& r = tree.nodes()[static_cast<std::size_t>(node.right)];
      EXPECT_EQ(l.samples + r.samples, node.samples);
      const double weighted = (static_cast<double>(l.samples) * l.impurity +
                               static_cast<double>(r.samples) * r.impurity) /
                              static_cast<double>(node.samples);
      EXPECT_LT(weighted, node.impurity);
    }
  }
}

TEST(DecisionTree, JsonRoundTripAndDeterminism) {
  const Data d = blobs(120, 3, 1.5, 4);
  TreeParams p;
  p.max_features = 2;
  const auto a = DecisionTree::fit_classifier(d.x, d.y, 2, p, {}, 17);
  const auto b = DecisionTree::fit_classifier(d.x, d.y, 2, p, {}, 17);
  EXPECT_TRUE(a == b);
  EXPECT_TRUE(DecisionTree::from_json(a.to_json()) == a);
}

TEST(DecisionTree, RejectsEmptyInput) {
  const Matrix x(0, 2);
  const std::vector<int> y;
  EXPECT_ANY_THROW(DecisionTree::fit_classifier(x, y, 2, {}));
}

TEST(DecisionTree, RegressorFitsStepFunction) {
  Matrix x(50, 1);
  std::vector<double> y(50);
  for (std::size_t i = 0; i < 50; ++i) {
    x(i, 0) = static_cast<double>(i);
    y[i] = i < 20 ? 1.0 : 4.0;
  }
  const auto tree = DecisionTree::fit_regressor(x, y, {});
  EXPECT_EQ(tree.leaf_count(), 2U);
  EXPECT_DOUBLE_EQ(tree.predict_value(std::vector<double>{3.0}), 1.0);
  EXPECT_DOUBLE_EQ(tree.predict_value(std::vector<double>{30.0}), 4.0);
}

TEST(RandomForest, SeparableDataIsLearned) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Data d = blobs(200, 4, 4.0, 100 + seed);
    ForestParams p;
    p.n_trees = 30;
    const auto forest = RandomForest::fit_classifier(d.x, d.y, 2, p, seed);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < d.x.rows(); ++i) correct += forest.predict_class(d.x.row(i)) == d.y[i];
    EXPECT_GE(static_cast<double>(correct) / 200.0, 0.95) << seed;
  }
}

TEST(RandomForest, DegenerateForestIsOneTree) {
  const Data d = blobs(150, 3, 1.0, 8);
  ForestParams p;
  p.feature_ratio = 1.0;
  p.n_trees = 1;
  p.bootstrap = false;
  const auto forest = RandomForest::fit_classifier(d.x, d.y, 2, p, 99);
  const auto tree = DecisionTree::fit_classifier(d.x, d.y, 2, {});
  EXPECT_TRUE(forest.trees()[0] == tree);
}

TEST(RandomForest, NoiseLabelsGiveOobAccuracyNearPrior) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix x(500, 4);
  std::vector<int> y(500);
  for (std::size_t i = 0; i < 500; ++i) {
    for (std::size_t j = 0; j < 4; ++j) x(i, j) = u(rng);
    y[i] = u(rng) < 0.8 ? 0 : 1;
  }
  const double prior = static_cast<double>(std::count(y.begin(), y.end(), 0)) / 500.0;
  ForestParams p;
  p.n_trees = 50;
  const auto forest = RandomForest::fit_classifier(x, y, 2, p, 3);
  const auto oob = forest.oob_classes();
  double correct = 0, seen = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    if (oob[i] < 0) continue;
    seen += 1;
    correct += oob[i] == y[i];
  }
  EXPECT_NEAR(correct / seen, prior, 0.1);
}

TEST(RandomForest, DeterministicAcrossJobCounts) {
  const Data d = blobs(100, 5, 1.0, 5);
  ForestParams p;
  p.n_trees = 12;
  const auto a = RandomForest::fit_classifier(d.x, d.y, 2, p, 42, 1);
  const auto b = RandomForest::fit_classifier(d.x, d.y, 2, p, 42, 3);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.oob_classes(), b.oob_classes());
}

TEST(RandomForest, FeaturesPerSplitAndValidation) {
  ForestParams p;
  p.feature_ratio = 0.3;
  EXPECT_EQ(p.features_per_split(10), 3U);
  EXPECT_EQ(p.features_per_split(11), 4U);
  p.feature_ratio = 0.01;
  EXPECT_EQ(p.features_per_split(5), 1U);
  p.feature_ratio = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.min_split = 1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.min_leaf = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(RandomForest, RegressionStaysWithinTargetRange) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Matrix x(200, 3);
  std::vector<double> y(200);
  for (std::size_t i = 0; i < 200; ++i) {
    for (std::size_t j = 0; j < 3; ++j) x(i, j) = u(rng);
    y[i] = x(i, 0) * x(i, 0) + 0.5 * x(i, 1);
  }
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  ForestParams p;
  p.n_trees = 20;
  const auto forest = RandomForest::fit_regressor(x, y, p, 1);
  for (int rep = 0; rep < 200; ++rep) {
    const std::vector<double> q = {u(rng) * 3, u(rng) * 3, u(rng) * 3};
    const double v = forest.predict_value(q);
    EXPECT_GE(v, *lo);
    EXPECT_LE(v, *hi);
  }
}

TEST(GiniImportance, DrivingFeatureDominates) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Data d = feature_three(300, 50 + seed);
    ForestParams p;
    p.n_trees = 25;
    const auto importance = gini_importance(RandomForest::fit_classifier(d.x, d.y, 2, p, seed));
    EXPECT_NEAR(std::accumulate(importance.begin(), importance.end(), 0.0), 1.0, 1e-9);
    for (std::size_t j = 0; j < importance.size(); ++j) {
      if (j != 3) EXPECT_GT(importance[3], importance[j]) << seed;
    }
  }
}

TEST(Smote, SyntheticPointsOnSegment) {
  const Matrix minority = Matrix::from_rows({{0, 0}, {1, 1}});
  const Matrix majority = Matrix::from_rows({{5, 5}, {6, 6}, {7, 7}, {8, 8}, {9, 9}, {4, 4}});
  const auto out = smote_oversample(minority, majority, 1, 0.5, 3);
  EXPECT_EQ(out.synthetic_count, 4U);
  for (std::size_t i = 0; i < out.x.rows(); ++i) {
    if (!out.synthetic[i]) continue;
    EXPECT_EQ(out.y[i], 1);
    EXPECT_DOUBLE_EQ(out.x(i, 0), out.x(i, 1));
    EXPECT_GE(out.x(i, 0), 0.0);
    EXPECT_LT(out.x(i, 0), 1.0);
  }
}

TEST(Smote, ParityAndBoundingBox) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix minority(10, 3), majority(90, 3);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 3; ++j) minority(i, j) = g(rng);
  for (std::size_t i = 0; i < 90; ++i)
    for (std::size_t j = 0; j < 3; ++j) majority(i, j) = 5 + g(rng);
  const auto out = smote_oversample(minority, majority, 5, 0.5, 11);
  const double n = static_cast<double>(out.y.size());
  const double positives = static_cast<double>(std::count(out.y.begin(), out.y.end(), 1));
  EXPECT_NEAR(positives / n, 0.5, 1.0 / n);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto col = minority.column(j);
    const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    for (std::size_t i = 0; i < out.x.rows(); ++i) {
      if (!out.synthetic[i]) continue;
      EXPECT_GE(out.x(i, j), *lo);
      EXPECT_LE(out.x(i, j), *hi);
    }
  }
  EXPECT_EQ(smote_deficit(10, 90, 0.5), 80U);
  EXPECT_EQ(smote_deficit(60, 40, 0.5), 0U);
}

TEST(Smote, RejectsTinyMinority) {
  const Matrix one = Matrix::from_rows({{0, 0}});
  const Matrix majority = Matrix::from_rows({{1, 1}, {2, 2}});
  EXPECT_THROW(smote_oversample(one, majority, 1, 0.5, 0), std::invalid_argument);
  const Matrix two = Matrix::from_rows({{0, 0}, {1, 0}});
  EXPECT_THROW(smote_oversample(two, majority, 1, 1.0, 0), std::invalid_argument);
}

TEST(DifferentialEvolution, SphereConverges) {
  const std::vector<SearchDimension> box(3, {-5.0, 5.0, false});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    DeOptions o;
    o.generations = 50;
    o.seed = seed;
    const auto r = differential_evolution(
        [](std::span<const double> v) {
          double s = 0;
          for (double x : v) s += x * x;
          return s;
        },
        box, o);
    EXPECT_LT(r.best_value, 1e-2) << seed;
  }
}

TEST(DifferentialEvolution, IntegerDimensionsAndInitialMembers) {
  const std::vector<SearchDimension> box = {{0.0, 10.0, true}, {-1.0, 1.0, false}};
  DeOptions o;
  o.population = 6;
  o.generations = 3;
  o.initial = {{7.0, 0.25}};
  std::vector<std::vector<double>> seen;
  const auto r = differential_evolution(
      [&](std::span<const double> v) {
        seen.emplace_back(v.begin(), v.end());
        EXPECT_EQ(v[0], std::round(v[0]));
        return std::abs(v[0] - 7.0) + std::abs(v[1] - 0.25);
      },
      box, o);
  EXPECT_EQ(seen.front(), (std::vector<double>{7.0, 0.25}));
  EXPECT_EQ(r.best, (std::vector<double>{7.0, 0.25}));
  EXPECT_EQ(r.best_value, 0.0);
  EXPECT_EQ(r.evaluations, seen.size());
}

TEST(DifferentialEvolution, RejectsDegenerateSetups) {
  const auto f = [](std::span<const double>) { return 0.0; };
  const std::vector<SearchDimension> box = {{0.0, 1.0, false}};
  DeOptions o;
  o.population = 1;
  EXPECT_THROW(differential_evolution(f, box, o), std::invalid_argument);
  EXPECT_THROW(differential_evolution(f, std::vector<SearchDimension>{}, DeOptions{}),
               std::invalid_argument);
  EXPECT_THROW(differential_evolution(f, std::vector<SearchDimension>{{1.0, 0.0, false}}, DeOptions{}),
               std::invalid_argument);
}

SoftmaxModel random_model(std::size_t classes, std::size_t k, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  SoftmaxModel m = SoftmaxModel::zeros(classes, k);
  for (double& w : m.weights) w = g(rng);
  for (double& b : m.intercepts) b = g(rng);
  return m;
}

TEST(Softmax, GradientMatchesCentralDifferences) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t classes = 2 + rng() % 3, k = 1 + rng() % 4, n = 5 + rng() % 20;
    Matrix x(n, k);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < k; ++j) x(i, j) = g(rng);
      y[i] = static_cast<int>(rng() % classes);
    }
    SoftmaxModel m = random_model(classes, k, rng);
    std::vector<double> grad;
    softmax_loss(m, x, y, &grad);
    ASSERT_EQ(grad.size(), classes * k + classes);
    for (std::size_t p = 0; p < grad.size(); ++p) {
      double& param = p < m.weights.size() ? m.weights[p] : m.intercepts[p - m.weights.size()];
      const double saved = param;
      const double h = 1e-5;
      param = saved + h;
      const double up = softmax_loss(m, x, y);
      param = saved - h;
      const double down = softmax_loss(m, x, y);
      param = saved;
      const double numeric = (up - down) / (2 * h);
      const double rel = std::abs(numeric - grad[p]) / std::max(1.0, std::abs(numeric));
      EXPECT_LT(rel, 1e-5) << rep << " param " << p;
    }
  }
}

TEST(McFadden, ClosedForms) {
  const std::vector<int> y = {0, 1, 1, 2, 2, 2};
  Matrix freq(6, 3);
  Matrix perfect(6, 3);
  for (std::size_t i = 0; i < 6; ++i) {
    freq(i, 0) = 1.0 / 6;
    freq(i, 1) = 2.0 / 6;
    freq(i, 2) = 3.0 / 6;
    perfect(i, static_cast<std::size_t>(y[i])) = 1.0;
  }
  EXPECT_EQ(mcfadden_adjusted_r2(freq, y, 0).r2_adjusted, 0.0);
  EXPECT_EQ(mcfadden_adjusted_r2(perfect, y, 0).r2_adjusted, 1.0);

  std::vector<int> balanced(100);
  for (std::size_t i = 0; i < 100; ++i) balanced[i] = static_cast<int>(i % 2);
  const Matrix uniform(100, 2, 0.5);
  const double ll = 100 * std::log(0.5);
  EXPECT_DOUBLE_EQ(mcfadden_adjusted_r2(uniform, balanced, 2).r2_adjusted, 1 - (ll - 2) / ll);
}

TEST(FitSoftmax, HugeLambdaShrinksEverything) {
  const Data d = blobs(90, 3, 2.0, 7, 3);
  std::vector<int> y = d.y;
  for (std::size_t i = 0; i < 20; ++i) y[i] = 2;  // class 2 is the majority
  for (double alpha : {0.0, 0.5, 1.0}) {
    const SoftmaxModel m = fit_softmax(d.x, y, 3, 1e8, alpha, {});
    EXPECT_LT(m.l1_norm(), 1e-4) << alpha;
    for (std::size_t i = 0; i < d.x.rows(); ++i) EXPECT_EQ(m.predict(d.x.row(i)), 2);
  }
}

TEST(FitSoftmax, LassoPathIsNonIncreasing) {
  const Data d = blobs(150, 5, 1.0, 9, 3);
  // z-score the columns as the two-stage fit does.
  Matrix z = d.x;
  for (std::size_t j = 0; j < z.cols(); ++j) {
    const auto col = d.x.column(j);
    const double mean = std::accumulate(col.begin(), col.end(), 0.0) / col.size();
    double ss = 0;
    for (double v : col) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (col.size() - 1));
    for (std::size_t i = 0; i < z.rows(); ++i) z(i, j) = (d.x(i, j) - mean) / sd;
  }
  SolverOptions tight;
  tight.tolerance = 1e-12;
  tight.max_iterations = 20000;
  for (double alpha : {1.0, 0.5, 0.1}) {
    double previous = std::numeric_limits<double>::infinity();
    for (double lambda : {1e0, 1e1, 1e2, 1e3, 1e4, 1e5}) {
      const double l1 = fit_softmax(z, d.y, 3, lambda, alpha, tight).l1_norm();
      EXPECT_LE(l1, previous + 1e-6) << "alpha " << alpha << " lambda " << lambda;
      previous = l1;
    }
  }
}

TEST(LogitElasticNet, SeparatedBlobs) {
  const Data d = blobs(150, 4, 4.0, 31, 3);
  LogitOptions o;
  o.alphas = {0.0, 0.5, 1.0};
  const LogitModel m = fit_multinomial_logit_elastic_net(d.x, d.y, o);
  EXPECT_EQ(m.classes, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(m.grid.size(), o.alphas.size() * o.lambdas.size());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < d.x.rows(); ++i) correct += m.predict(d.x.row(i)) == d.y[i];
  EXPECT_GE(static_cast<double>(correct) / 150.0, 0.9);
  for (std::size_t j : m.selected) {
    bool active = false;
    for (std::size_t c = 0; c < m.penalized.n_classes; ++c) active |= m.penalized.weight(c, j) != 0.0;
    EXPECT_TRUE(active);
  }
  EXPECT_EQ(m.selected, m.penalized.active_features());
  EXPECT_EQ(m.refit.n_features, m.selected.size());
  for (const auto& cell : m.grid) EXPECT_LE(cell.r2_adjusted, m.penalized_fit.r2_adjusted);
}

TEST(LogitElasticNet, KeepsOriginalLabels) {
  Data d = blobs(80, 2, 4.0, 3);
  for (int& v : d.y) v = v == 0 ? 5 : 9;
  LogitOptions o;
  o.alphas = {1.0};
  const LogitModel m = fit_multinomial_logit_elastic_net(d.x, d.y, o);
  EXPECT_EQ(m.classes, (std::vector<int>{5, 9}));
  const int label = m.predict(d.x.row(0));
  EXPECT_TRUE(label == 5 || label == 9);
  const nlohmann::json j = m.to_json({"u", "v"});
  EXPECT_TRUE(j.is_object());
}

TEST(LogitElasticNet, RejectsSingleClass) {
  const Matrix x = Matrix::from_rows({{1}, {2}});
  const std::vector<int> y = {3, 3};
  EXPECT_THROW(fit_multinomial_logit_elastic_net(x, y), std::invalid_argument);
}

double oracle_spearman(std::vector<double> x, std::vector<double> y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0, equal = 0;
      for (double w : v) {
        less += w < v[i];
        equal += w == v[i];
      }
      r[i] = less + (equal + 1) / 2;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

TEST(Spearman, Examples) {
  const std::vector<double> x = {1, 2, 2, 4};
  const std::vector<double> y = {1, 3, 2, 4};
  EXPECT_NEAR(spearman(x, y), oracle_spearman(x, y), 1e-12);
  EXPECT_DOUBLE_EQ(spearman(x, x), 1.0);
  const std::vector<double> rev = {4, 3, 2, 1};
  const std::vector<double> inc = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(spearman(inc, rev), -1.0);
  EXPECT_EQ(mid_ranks(x), (std::vector<double>{1, 2.5, 2.5, 4}));
}

TEST(Spearman, DropsUndefinedPairsAndHandlesDegenerateInput) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::vector<double> x = {1, nan, 3, 4, 5};
  const std::vector<double> y = {2, 9, 1, nan, 7};
  EXPECT_NEAR(spearman(x, y), oracle_spearman({1, 3, 5}, {2, 1, 7}), 1e-12);
  EXPECT_TRUE(std::isnan(spearman(std::vector<double>{1, nan}, std::vector<double>{2, 3})));
  EXPECT_TRUE(std::isnan(spearman(std::vector<double>{1, 1, 1}, std::vector<double>{2, 3, 4})));
}

TEST(Spearman, InvariantUnderMonotoneTransforms) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> x(25), y(25), tx(25), ty(25);
    for (std::size_t i = 0; i < 25; ++i) {
      x[i] = std::round(u(rng) * 4) / 4;
      y[i] = u(rng) + x[i];
      tx[i] = std::exp(x[i]);
      ty[i] = -1.0 / y[i];
    }
    EXPECT_NEAR(spearman(tx, ty), spearman(x, y), 1e-12);
    EXPECT_NEAR(spearman(x, y), oracle_spearman(x, y), 1e-12);
  }
}

TEST(NaiveBayes, SeparatesBlobsAndToleratesConstantFeatures) {
  Data d = blobs(100, 2, 5.0, 13);
  Matrix x(100, 3);
  for (std::size_t i = 0; i < 100; ++i) {
    x(i, 0) = d.x(i, 0);
    x(i, 1) = d.x(i, 1);
    x(i, 2) = 7.0;
  }
  const auto nb = GaussianNaiveBayes::fit(x, d.y);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const double p = nb.probability(x.row(i));
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
    correct += (p > 0.5) == (d.y[i] == 1);
  }
  EXPECT_GE(correct, 95U);
}

}  // namespace
}  // namespace costbound
