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

#include "costbound/learners/differential_evolution.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace costbound {
namespace {

std::vector<double> snap(std::span<const double> v, std::span<const SearchDimension> box) {
  std::vector<double> out(v.begin(), v.end());
  for (std::size_t d = 0; d < box.size(); ++d) {
    out[d] = std::clamp(out[d], box[d].lower, box[d].upper);
    if (box[d].integer) {
      out[d] = std::clamp(std::round(out[d]), std::ceil(box[d].lower), std::floor(box[d].upper));
    }
  }
  return out;
}

}  // namespace

DeResult differential_evolution(const DeObjective& objective,
                                std::span<const SearchDimension> box,
                                const DeOptions& options) {
  if (box.empty()) throw std::invalid_argument("differential evolution: empty search box");
  for (const auto& d : box) {
    if (!(d.lower <= d.upper) || !std::isfinite(d.lower) || !std::isfinite(d.upper)) {
      throw std::invalid_argument("differential evolution: invalid bounds");
    }
  }
  if (options.population < 4) {
    throw std::invalid_argument("differential evolution: population must be at least 4");
  }
  const std::size_t np = options.population;
  const std::size_t dims = box.size();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> member(0, np - 1);
  std::uniform_int_distribution<std::size_t> dim_pick(0, dims - 1);

  DeResult result;
  auto evaluate = [&](std::span<const double> v) {
    ++result.evaluations;
    const double f = objective(snap(v, box));
    return std::isnan(f) ? std::numeric_limits<double>::infinity() : f;
  };

  std::vector<std::vector<double>> pop(np, std::vector<double>(dims));
  std::vector<double> fitness(np);
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t d = 0; d < dims; ++d) {
      pop[i][d] = box[d].lower + unit(rng) * (box[d].upper - box[d].lower);
    }
    if (i < options.initial.size()) {
      if (options.initial[i].size() != dims) {
        throw std::invalid_argument("differential evolution: initial member has the wrong size");
      }
      pop[i] = snap(options.initial[i], box);
    }
    fitness[i] = evaluate(pop[i]);
  }
  std::size_t best = static_cast<std::size_t>(std::min_element(fitness.begin(), fitness.end()) - fitness.begin());

  std::vector<double> trial(dims);
  for (std::size_t g = 0; g < options.generations; ++g) {
    for (std::size_t i = 0; i < np; ++i) {
      std::size_t a, b, c;
      do a = member(rng); while (a == i);
      do b = member(rng); while (b == i || b == a);
      do c = member(rng); while (c == i || c == a || c == b);
      const std::size_t forced = dim_pick(rng);
      for (std::size_t d = 0; d < dims; ++d) {
        if (d == forced || unit(rng) < options.crossover) {
          const double v = pop[a][d] + options.mutation * (pop[b][d] - pop[c][d]);
          trial[d] = std::clamp(v, box[d].lower, box[d].upper);
        } else {
          trial[d] = pop[i][d];
        }
      }
      const double f = evaluate(trial);
      if (f <= fitness[i]) {
        pop[i] = trial;
        fitness[i] = f;
        if (f < fitness[best]) best = i;
      }
    }
  }
  result.best = snap(pop[best], box);
  result.best_value = fitness[best];
  return result;
}

}  // namespace costbound
