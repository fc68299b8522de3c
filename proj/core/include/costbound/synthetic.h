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

#ifndef COSTBOUND_SYNTHETIC_H_
#define COSTBOUND_SYNTHETIC_H_

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "costbound/release.h"

namespace costbound {

// Parameters of the synthetic corpus generator. Sizes are log-normal;
// feature 1 is ln(1 + size), the remaining features are noisy non-negative
// metrics whose mean is shifted by `signal` (times a per-release factor in
// [0.5, 1.5]) on defective artifacts.
struct SyntheticSpec {
  std::size_t projects = 10;
  std::size_t releases_per_project = 5;
  std::size_t min_artifacts = 200;
  std::size_t max_artifacts = 200;
  double min_defect_ratio = 0.05;
  double max_defect_ratio = 0.15;
  double size_log_mean = 4.0;
  double size_log_sd = 1.0;
  std::size_t features = 10;
  double signal = 1.0;
  int release_interval_days = 120;
  int project_offset_days = 30;
  int max_fix_delay_days = 540;
  double overlap_probability = 0.2;  // chance a defect of one or two files also touches another defective file
  Timestamp start = Timestamp{std::chrono::sys_days{std::chrono::year{2015} /
                                                    std::chrono::January / 1}};
  std::string project_prefix = "p";

  // Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

void to_json(nlohmann::json& j, const SyntheticSpec& spec);
void from_json(const nlohmann::json& j, SyntheticSpec& spec);

// Deterministic for a given (spec, seed).
std::vector<Release> generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace costbound

#endif  // COSTBOUND_SYNTHETIC_H_
