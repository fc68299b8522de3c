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

#ifndef COSTBOUND_LEARNERS_SPEARMAN_H_
#define COSTBOUND_LEARNERS_SPEARMAN_H_

#include <span>
#include <vector>

namespace costbound {

// 1-based ranks with ties sharing their mean rank.
std::vector<double> mid_ranks(std::span<const double> values);

// Pearson correlation; NaN if either side has zero variance or fewer than
// two values.
double pearson(std::span<const double> x, std::span<const double> y);

// Spearman's rho as the Pearson correlation of mid-ranks. Pairs with a NaN on
// either side are dropped first; NaN if fewer than two pairs survive.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace costbound

#endif  // COSTBOUND_LEARNERS_SPEARMAN_H_
