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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "costbound/learners/random_forest.h"

namespace costbound {
namespace {

void make_data(std::size_t n, std::size_t k, Matrix& x, std::vector<int>& y) {
  std::mt19937_64 rng(n * 31 + k);
  std::normal_distribution<double> g(0.0, 1.0);
  x = Matrix(n, k);
  y.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      x(i, j) = g(rng);
      if (j < 3) s += x(i, j);
    }
    y[i] = s + g(rng) > 1.0 ? 1 : 0;
  }
}

void BM_ForestFit(benchmark::State& state) {
  Matrix x;
  std::vector<int> y;
  make_data(static_cast<std::size_t>(state.range(0)), 20, x, y);
  ForestParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RandomForest::fit_classifier(x, y, 2, params, 1));
  }
}
BENCHMARK(BM_ForestFit)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace costbound
