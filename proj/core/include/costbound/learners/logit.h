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

#ifndef COSTBOUND_LEARNERS_LOGIT_H_
#define COSTBOUND_LEARNERS_LOGIT_H_

#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "costbound/learners/matrix.h"

namespace costbound {

// Multinomial logistic regression with one coefficient row per class.
struct SoftmaxModel {
  std::size_t n_classes = 0;
  std::size_t n_features = 0;
  std::vector<double> weights;     // n_classes x n_features, row-major
  std::vector<double> intercepts;  // n_classes

  static SoftmaxModel zeros(std::size_t n_classes, std::size_t n_features);

  double weight(std::size_t c, std::size_t j) const { return weights[c * n_features + j]; }
  std::vector<double> probabilities(std::span<const double> x) const;
  int predict(std::span<const double> x) const;
  // Sum of |w| over all classes and features (intercepts excluded).
  double l1_norm() const;
  // Features with a non-zero weight in any class.
  std::vector<std::size_t> active_features() const;
};

// Summed negative log-likelihood of class indices `y`. When `gradient` is
// given it receives d/dweights followed by d/dintercepts.
double softmax_loss(const SoftmaxModel& model, const Matrix& x, std::span<const int> y,
                    std::vector<double>* gradient = nullptr);

struct SolverOptions {
  double tolerance = 1e-6;  // on the relative change of the objective
  std::size_t max_iterations = 5000;
};

// Minimizes loss + lambda * (alpha * |W|_1 + (1 - alpha) / 2 * |W|_2^2) by
// accelerated proximal gradient with backtracking. Intercepts are not
// penalized.
SoftmaxModel fit_softmax(const Matrix& x, std::span<const int> y, std::size_t n_classes,
                         double lambda, double alpha, const SolverOptions& options,
                         const SoftmaxModel* warm_start = nullptr);

struct GoodnessOfFit {
  double log_likelihood = 0.0;
  double null_log_likelihood = 0.0;
  std::size_t k = 0;
  double r2_adjusted = 0.0;
};

// McFadden's adjusted R^2 = 1 - (LL - k) / LL_null, with LL summed over the
// one-hot observed class and LL_null from the observed class frequencies.
// `probabilities` is n x classes; entries are clamped to [1e-12, 1].
GoodnessOfFit mcfadden_adjusted_r2(const Matrix& probabilities, std::span<const int> y,
                                   std::size_t k);

struct LogitOptions {
  std::vector<double> lambdas = {1e0, 1e1, 1e2, 1e3, 1e4, 1e5};
  std::vector<double> alphas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  SolverOptions solver;
};

struct LogitGridCell {
  double lambda = 0.0;
  double alpha = 0.0;
  double r2_adjusted = 0.0;
  std::size_t active_features = 0;
  double l1_norm = 0.0;
};

// Two-stage fit: an elastic-net model on z-scored features picks the grid
// cell with the largest adjusted R^2, then an unpenalized model on the raw
// features that survived stage 1 is refit.
struct LogitModel {
  std::vector<int> classes;  // original label of each class index
  double lambda = 0.0;
  double alpha = 0.0;
  std::vector<double> means;
  std::vector<double> scales;
  SoftmaxModel penalized;  // stage 1, z-scored features
  GoodnessOfFit penalized_fit;
  std::vector<std::size_t> selected;
  SoftmaxModel refit;  // stage 2, raw values of the selected features
  GoodnessOfFit refit_fit;
  std::vector<LogitGridCell> grid;

  // `x` holds all original features, unscaled.
  std::vector<double> probabilities(std::span<const double> x) const;
  int predict(std::span<const double> x) const;  // original label

  nlohmann::json to_json(const std::vector<std::string>& feature_names = {}) const;
};

// Throws std::invalid_argument when fewer than two classes are present.
LogitModel fit_multinomial_logit_elastic_net(const Matrix& x, std::span<const int> y,
                                             const LogitOptions& options = {});

}  // namespace costbound

#endif  // COSTBOUND_LEARNERS_LOGIT_H_
