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

#ifndef COSTBOUND_TRANSFER_H_
#define COSTBOUND_TRANSFER_H_

#include <string_view>
#include <vector>

#include "costbound/learners/matrix.h"

namespace costbound {

enum class TransferKind { none, watanabe, camargo_cruz };

std::string_view to_string(TransferKind kind);
TransferKind parse_transfer(std::string_view name);

struct TransferResult {
  Matrix train;
  Matrix target;
  std::vector<std::size_t> unscaled;  // features with a zero train mean (watanabe)
};

// watanabe: train feature j is multiplied by mean(target_j) / mean(train_j).
// camargo_cruz: ln(max(x, 0) + 1) on both sides, then train feature j is
// shifted by median(target_j) - median(train_j).
TransferResult transfer_transform(TransferKind kind, const Matrix& train, const Matrix& target);

}  // namespace costbound

#endif  // COSTBOUND_TRANSFER_H_
