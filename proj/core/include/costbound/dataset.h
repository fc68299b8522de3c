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

#ifndef COSTBOUND_DATASET_H_
#define COSTBOUND_DATASET_H_

#include <cstdint>
#include <vector>

#include "costbound/release.h"

namespace costbound {

// How the minimum-defect rule of release filtering counts.
enum class DefectCounting {
  defective_files,  // |S_DEF|
  defects,          // |D|
};

struct EligibilityRule {
  std::size_t min_instances = 100;
  std::size_t min_defects = 5;
  DefectCounting counting = DefectCounting::defective_files;
};

bool is_eligible(const Release& release, const EligibilityRule& rule);

// Keeps the releases satisfying `rule`, in input order.
std::vector<Release> filter_releases(const std::vector<Release>& releases,
                                     const EligibilityRule& rule);

// One bootstrap draw. `train` holds release positions with repetition, in
// draw order; `test` holds the out-of-bag positions in ascending order.
struct SplitSample {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  std::uint64_t seed = 0;
  std::size_t draws = 0;  // attempts used, >= 1
};

inline constexpr std::size_t kDefaultMaxRedraws = 1000;

// Resamples |S| positions with replacement until the in-bag sample contains
// at least two distinct defective artifacts and the out-of-bag set at least
// one. Throws std::runtime_error naming the release once `max_redraws`
// attempts have failed.
SplitSample bootstrap_split(const Release& release, std::uint64_t seed,
                            std::size_t max_redraws = kDefaultMaxRedraws);

}  // namespace costbound

#endif  // COSTBOUND_DATASET_H_
