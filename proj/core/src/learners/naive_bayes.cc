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

#include "costbound/learners/naive_bayes.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace costbound {

GaussianNaiveBayes GaussianNaiveBayes::fit(const Matrix& x, std::span<const int> y) {
  if (x.rows() == 0 || y.size() != x.rows()) {
    throw std::invalid_argument("naive Bayes: empty or mismatched training data");
  }
  const std::size_t d = x.cols();
  GaussianNaiveBayes nb;
  double counts[2] = {0.0, 0.0};
  for (int c = 0; c < 2; ++c) {
    nb.mean_[c].assign(d, 0.0);
    nb.var_[c].assign(d, 0.0);
  }
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const int c = y[i] ? 1 : 0;
    counts[c] += 1.0;
    for (std::size_t j = 0; j < d; ++j) nb.mean_[c][j] += x(i, j);
  }
  for (int c = 0; c < 2; ++c) {
    nb.present_[c] = counts[c] > 0.0;
    if (!nb.present_[c]) continue;
    for (double& m : nb.mean_[c]) m /= counts[c];
  }
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const int c = y[i] ? 1 : 0;
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = x(i, j) - nb.mean_[c][j];
      nb.var_[c][j] += diff * diff;
    }
  }
  // Smoothing relative to the overall feature spread.
  double max_var = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) mean += x(i, j);
    mean /= static_cast<double>(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) sq += (x(i, j) - mean) * (x(i, j) - mean);
    max_var = std::max(max_var, sq / static_cast<double>(x.rows()));
  }
  const double epsilon = 1e-9 * std::max(max_var, 1e-12);
  const double n = counts[0] + counts[1];
  for (int c = 0; c < 2; ++c) {
    if (!nb.present_[c]) continue;
    for (double& v : nb.var_[c]) v = v / counts[c] + epsilon;
    nb.log_prior_[c] = std::log(counts[c] / n);
  }
  return nb;
}

double GaussianNaiveBayes::probability(std::span<const double> x) const {
  if (!present_[1]) return 0.0;
  if (!present_[0]) return 1.0;
  double ll[2];
  for (int c = 0; c < 2; ++c) {
    double s = log_prior_[c];
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double diff = x[j] - mean_[c][j];
      s -= 0.5 * std::log(2.0 * std::numbers::pi * var_[c][j]) + diff * diff / (2.0 * var_[c][j]);
    }
    ll[c] = s;
  }
  const double m = std::max(ll[0], ll[1]);
  const double p1 = std::exp(ll[1] - m);
  const double p0 = std::exp(ll[0] - m);
  return p1 / (p0 + p1);
}

}  // namespace costbound
