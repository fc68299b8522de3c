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

#ifndef COSTBOUND_LEARNERS_NAIVE_BAYES_H_
#define COSTBOUND_LEARNERS_NAIVE_BAYES_H_

#include <span>
#include <vector>

#include "costbound/learners/matrix.h"

namespace costbound {

// Two-class Gaussian naive Bayes. Variances get 1e-9 times the largest
// feature variance added, so constant features stay usable.
class GaussianNaiveBayes {
 public:
  static GaussianNaiveBayes fit(const Matrix& x, std::span<const int> y);

  // Posterior probability of class 1.
  double probability(std::span<const double> x) const;

 private:
  double log_prior_[2] = {0.0, 0.0};
  std::vector<double> mean_[2];
  std::vector<double> var_[2];
  bool present_[2] = {false, false};
};

}  // namespace costbound

#endif  // COSTBOUND_LEARNERS_NAIVE_BAYES_H_
