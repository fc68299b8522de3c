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

#include "costbound/learners/smote.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace costbound {

std::size_t smote_deficit(std::size_t minority, std::size_t majority, double target_ratio) {
  // Smallest s with (m + s) / (m + s + M) >= t.
  const double m = static_cast<double>(minority);
  const double big = static_cast<double>(majority);
  const double needed = (target_ratio * big - (1.0 - target_ratio) * m) / (1.0 - target_ratio);
  if (needed <= 0.0) return 0;
  auto s = static_cast<std::size_t>(std::ceil(needed - 1e-9));
  while ((m + static_cast<double>(s)) < target_ratio * (m + static_cast<double>(s) + big) - 1e-12) ++s;
  return s;
}

OversampledData smote_oversample(const Matrix& minority, const Matrix& majority,
                                 std::size_t k_neighbors, double target_ratio,
                                 std::uint64_t seed) {
  if (minority.rows() < 2) throw std::invalid_argument("SMOTE needs at least two minority rows");
  if (!(target_ratio > 0.0 && target_ratio < 1.0)) {
    throw std::invalid_argument("SMOTE target ratio must lie in (0, 1)");
  }
  if (!majority.empty() && majority.cols() != minority.cols()) {
    throw std::invalid_argument("SMOTE inputs differ in width");
  }
  if (k_neighbors == 0) throw std::invalid_argument("SMOTE needs k >= 1");
  const std::size_t n = minority.rows();
  const std::size_t d = minority.cols();
  const std::size_t k = std::min(k_neighbors, n - 1);

  // k nearest minority neighbours of every minority row.
  std::vector<std::vector<std::size_t>> neighbors(n);
  std::vector<std::pair<double, std::size_t>> dist;
  for (std::size_t i = 0; i < n; ++i) {
    dist.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double diff = minority(i, c) - minority(j, c);
        s += diff * diff;
      }
      dist.emplace_back(s, j);
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    for (std::size_t t = 0; t < k; ++t) neighbors[i].push_back(dist[t].second);
  }

  OversampledData out;
  const std::size_t extra = smote_deficit(n, majority.rows(), target_ratio);
  out.x = Matrix(n + majority.rows() + extra, d);
  out.y.assign(out.x.rows(), 0);
  out.synthetic.assign(out.x.rows(), 0);
  std::size_t r = 0;
  for (std::size_t i = 0; i < n; ++i, ++r) {
    std::copy_n(minority.row(i).begin(), d, out.x.row(r).begin());
    out.y[r] = 1;
  }
  for (std::size_t i = 0; i < majority.rows(); ++i, ++r) {
    std::copy_n(majority.row(i).begin(), d, out.x.row(r).begin());
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> base_pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> nn_pick(0, k - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t s = 0; s < extra; ++s, ++r) {
    const std::size_t base = base_pick(rng);
    const std::size_t other = neighbors[base][nn_pick(rng)];
    const double u = unit(rng);
    for (std::size_t c = 0; c < d; ++c) {
      out.x(r, c) = minority(base, c) + u * (minority(other, c) - minority(base, c));
    }
    out.y[r] = 1;
    out.synthetic[r] = 1;
  }
  out.synthetic_count = extra;
  return out;
}

}  // namespace costbound
