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

#ifndef COSTBOUND_LEARNERS_SMOTE_H_
#define COSTBOUND_LEARNERS_SMOTE_H_

#include <cstdint>
#include <vector>

#include "costbound/learners/matrix.h"

namespace costbound {

// Training data after oversampling. Rows are the minority rows (label 1),
// then the majority rows (label 0), then the synthetic minority rows.
struct OversampledData {
  Matrix x;
  std::vector<int> y;
  std::vector<std::uint8_t> synthetic;
  std::size_t synthetic_count = 0;
};

// Number of synthetic points needed for the minority share to reach
// `target_ratio`; zero if it already does.
std::size_t smote_deficit(std::size_t minority, std::size_t majority, double target_ratio);

// Each synthetic point is x + u * (x_nn - x), u ~ U[0, 1), for a random
// minority point x and one of its k nearest minority neighbours (Euclidean).
// k is capped at |minority| - 1. Throws std::invalid_argument if
// |minority| < 2 or target_ratio is outside (0, 1).
OversampledData smote_oversample(const Matrix& minority, const Matrix& majority,
                                 std::size_t k_neighbors, double target_ratio,
                                 std::uint64_t seed);

}  // namespace costbound

#endif  // COSTBOUND_LEARNERS_SMOTE_H_
