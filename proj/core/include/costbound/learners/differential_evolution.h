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

#ifndef COSTBOUND_LEARNERS_DIFFERENTIAL_EVOLUTION_H_
#define COSTBOUND_LEARNERS_DIFFERENTIAL_EVOLUTION_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace costbound {

struct SearchDimension {
  double lower = 0.0;
  double upper = 1.0;
  bool integer = false;  // rounded to the nearest integer before evaluation
};

struct DeOptions {
  std::size_t population = 20;
  std::size_t generations = 30;
  double mutation = 0.8;   // F
  double crossover = 0.9;  // CR
  std::uint64_t seed = 0;
  // Members placed first in the initial population; the rest are uniform.
  std::vector<std::vector<double>> initial;
};

struct DeResult {
  std::vector<double> best;  // already rounded on integer dimensions
  double best_value = 0.0;
  std::size_t evaluations = 0;
};

using DeObjective = std::function<double(std::span<const double>)>;

// DE/rand/1/bin minimizing `objective` over the box. Mutants are clipped to
// the box. Returns the best point seen. Throws std::invalid_argument for an
// empty box, inverted bounds, or a population below 4.
DeResult differential_evolution(const DeObjective& objective,
                                std::span<const SearchDimension> box,
                                const DeOptions& options);

}  // namespace costbound

#endif  // COSTBOUND_LEARNERS_DIFFERENTIAL_EVOLUTION_H_
