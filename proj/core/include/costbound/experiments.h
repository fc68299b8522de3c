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

#ifndef COSTBOUND_EXPERIMENTS_H_
#define COSTBOUND_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "costbound/cost_model.h"
#include "costbound/dataset.h"
#include "costbound/learners/matrix.h"
#include "costbound/models.h"
#include "costbound/records.h"
#include "costbound/release.h"

namespace costbound {

inline constexpr int kTemporalWindowDays = 183;

struct ExperimentOptions {
  std::size_t jobs = 1;
  Boundaries boundaries;
  ForestModelOptions forest;  // bootstrap forest; its oversample field is set per variant
  // Preprocessing of the second bootstrap variant; off disables that variant.
  OversampleMode oversample = OversampleMode::smote_tuned;
  std::size_t max_redraws = kDefaultMaxRedraws;
  EligibilityRule eligibility;
  int temporal_window_days = kTemporalWindowDays;
};

struct ExperimentResult {
  std::vector<EvaluationRecord> records;
  std::vector<std::string> notices;  // skipped releases and similar
};

Matrix feature_matrix(const Release& release, std::span<const std::size_t> positions);
Matrix feature_matrix(const Release& release);
std::vector<int> defect_labels(const Release& release, std::span<const std::size_t> positions);

// Per release and sample: split, train on the in-bag rows, evaluate on the
// out-of-bag rows, once on plain data and once after oversampling.
ExperimentResult run_bootstrap(const std::vector<Release>& releases, std::size_t n_samples,
                               std::uint64_t seed, const ExperimentOptions& options = {});

// Index of the closest earlier release of the same project that passes the
// eligibility rule. Order is released_at, then release id.
std::optional<std::size_t> cross_version_source(const std::vector<Release>& releases,
                                                std::size_t target,
                                                const EligibilityRule& rule);

// Eligible releases of other projects published at least `window_days`
// before the target.
std::vector<std::size_t> cross_project_pool(const std::vector<Release>& releases,
                                            std::size_t target, const EligibilityRule& rule,
                                            int window_days = kTemporalWindowDays);

// Training labels in both generalization scenarios only count defects fixed
// before the target's release date.
ExperimentResult run_cross_version(const std::vector<Release>& releases, const ModelSpec& spec,
                                   std::uint64_t seed, const ExperimentOptions& options = {});
ExperimentResult run_cross_project(const std::vector<Release>& releases, const ModelSpec& spec,
                                   std::uint64_t seed, const ExperimentOptions& options = {});

}  // namespace costbound

#endif  // COSTBOUND_EXPERIMENTS_H_
