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
#include <string>
#include <vector>

#include "costbound/cost_model.h"
#include "costbound/metrics.h"

namespace costbound {
namespace {

struct Workload {
  EvaluationView view;
  Prediction pred;
};

Workload make_workload(std::size_t n) {
  std::mt19937_64 rng(n);
  std::vector<std::string> ids(n);
  std::vector<std::int64_t> sizes(n);
  std::vector<std::pair<std::string, std::vector<std::string>>> defects;
  std::vector<double> scores(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = "a" + std::to_string(i);
    sizes[i] = 1 + static_cast<std::int64_t>(rng() % 2000);
    scores[i] = u(rng);
  }
  for (std::size_t d = 0; d < n / 5; ++d) {
    std::vector<std::string> members = {ids[rng() % n]};
    if (rng() % 3 == 0) {
      const std::string extra = ids[rng() % n];
      if (extra != members[0]) members.push_back(extra);
    }
    defects.push_back({"d" + std::to_string(d), members});
  }
  return {EvaluationView::create(ids, sizes, defects), Prediction(scores)};
}

void BM_EvaluateMetrics(benchmark::State& state) {
  const Workload w = make_workload(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_metrics(w.view, w.pred));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvaluateMetrics)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_CostBounds(benchmark::State& state) {
  const Workload w = make_workload(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cost_bounds(w.view, w.pred));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CostBounds)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

}  // namespace
}  // namespace costbound
