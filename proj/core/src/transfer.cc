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

#include "costbound/transfer.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace costbound {

std::string_view to_string(TransferKind kind) {
  switch (kind) {
    case TransferKind::none: return "none";
    case TransferKind::watanabe: return "watanabe";
    case TransferKind::camargo_cruz: return "camargo_cruz";
  }
  return "none";
}

TransferKind parse_transfer(std::string_view name) {
  if (name == "none") return TransferKind::none;
  if (name == "watanabe") return TransferKind::watanabe;
  if (name == "camargo_cruz") return TransferKind::camargo_cruz;
  throw std::invalid_argument("unknown transfer kind: " + std::string(name));
}

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

TransferResult transfer_transform(TransferKind kind, const Matrix& train, const Matrix& target) {
  if (train.cols() != target.cols() && !train.empty() && !target.empty()) {
    throw std::invalid_argument("transfer: feature count mismatch");
  }
  TransferResult out{train, target, {}};
  const std::size_t d = train.cols();
  switch (kind) {
    case TransferKind::none:
      break;
    case TransferKind::watanabe:
      for (std::size_t j = 0; j < d; ++j) {
        const double mt = mean_of(train.column(j));
        if (mt == 0.0) {
          out.unscaled.push_back(j);
          continue;
        }
        const double f = mean_of(target.column(j)) / mt;
        for (std::size_t i = 0; i < out.train.rows(); ++i) out.train(i, j) *= f;
      }
      break;
    case TransferKind::camargo_cruz: {
      auto log_all = [](Matrix& m) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
          for (double& v : m.row(i)) v = std::log(std::max(v, 0.0) + 1.0);
        }
      };
      log_all(out.train);
      log_all(out.target);
      for (std::size_t j = 0; j < d; ++j) {
        const double shift = median_of(out.target.column(j)) - median_of(out.train.column(j));
        for (std::size_t i = 0; i < out.train.rows(); ++i) out.train(i, j) += shift;
      }
      break;
    }
  }
  return out;
}

}  // namespace costbound
