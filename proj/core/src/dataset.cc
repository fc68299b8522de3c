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

#include "costbound/dataset.h"

#include <random>
#include <stdexcept>

namespace costbound {

bool is_eligible(const Release& release, const EligibilityRule& rule) {
  const std::size_t defects = rule.counting == DefectCounting::defective_files
                                  ? release.defective_count()
                                  : release.defects().size();
  return release.size() >= rule.min_instances && defects >= rule.min_defects;
}

std::vector<Release> filter_releases(const std::vector<Release>& releases,
                                     const EligibilityRule& rule) {
  std::vector<Release> kept;
  for (const Release& r : releases) {
    if (is_eligible(r, rule)) kept.push_back(r);
  }
  return kept;
}

SplitSample bootstrap_split(const Release& release, std::uint64_t seed,
                            std::size_t max_redraws) {
  const std::size_t n = release.size();
  SplitSample s;
  s.seed = seed;
  if (n == 0) {
    throw std::runtime_error("bootstrap of " + release.label() + ": empty release");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::uint8_t> in_bag(n);
  for (std::size_t attempt = 1; attempt <= max_redraws; ++attempt) {
    std::fill(in_bag.begin(), in_bag.end(), 0);
    s.train.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      s.train[i] = pick(rng);
      in_bag[s.train[i]] = 1;
    }
    std::size_t train_defective = 0;
    std::size_t test_defective = 0;
    s.test.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (in_bag[i]) {
        train_defective += release.is_defective(i) ? 1 : 0;
      } else {
        s.test.push_back(i);
        test_defective += release.is_defective(i) ? 1 : 0;
      }
    }
    if (train_defective >= 2 && test_defective >= 1) {
      s.draws = attempt;
      return s;
    }
  }
  throw std::runtime_error("bootstrap of " + release.label() + ": no valid sample after " +
                           std::to_string(max_redraws) + " redraws");
}

}  // namespace costbound
