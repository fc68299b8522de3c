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

#include "costbound/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "costbound/common.h"

namespace costbound {

void SyntheticSpec::validate() const {
  auto bad = [](const char* what) { throw std::invalid_argument(std::string("synthetic spec: ") + what); };
  if (projects == 0) bad("projects must be positive");
  if (releases_per_project == 0) bad("releases_per_project must be positive");
  if (min_artifacts == 0 || min_artifacts > max_artifacts) bad("artifact range is empty");
  if (!(min_defect_ratio > 0.0) || min_defect_ratio > max_defect_ratio || max_defect_ratio > 1.0) {
    bad("defect ratio range must satisfy 0 < min <= max <= 1");
  }
  if (!(size_log_sd >= 0.0) || !std::isfinite(size_log_mean)) bad("invalid log-normal size parameters");
  if (features == 0) bad("features must be positive");
  if (!std::isfinite(signal) || signal < 0.0) bad("signal must be finite and non-negative");
  if (release_interval_days <= 0) bad("release_interval_days must be positive");
  if (max_fix_delay_days < 1) bad("max_fix_delay_days must be at least 1");
  if (overlap_probability < 0.0 || overlap_probability > 1.0) bad("overlap_probability outside [0,1]");
}

void to_json(nlohmann::json& j, const SyntheticSpec& s) {
  j = {{"projects", s.projects},
       {"releases_per_project", s.releases_per_project},
       {"min_artifacts", s.min_artifacts},
       {"max_artifacts", s.max_artifacts},
       {"min_defect_ratio", s.min_defect_ratio},
       {"max_defect_ratio", s.max_defect_ratio},
       {"size_log_mean", s.size_log_mean},
       {"size_log_sd", s.size_log_sd},
       {"features", s.features},
       {"signal", s.signal},
       {"release_interval_days", s.release_interval_days},
       {"project_offset_days", s.project_offset_days},
       {"max_fix_delay_days", s.max_fix_delay_days},
       {"overlap_probability", s.overlap_probability},
       {"start", format_timestamp(s.start)},
       {"project_prefix", s.project_prefix}};
}

void from_json(const nlohmann::json& j, SyntheticSpec& s) {
  auto get = [&j](const char* key, auto& field) {
    if (auto it = j.find(key); it != j.end()) it->get_to(field);
  };
  get("projects", s.projects);
  get("releases_per_project", s.releases_per_project);
  get("min_artifacts", s.min_artifacts);
  get("max_artifacts", s.max_artifacts);
  get("min_defect_ratio", s.min_defect_ratio);
  get("max_defect_ratio", s.max_defect_ratio);
  get("size_log_mean", s.size_log_mean);
  get("size_log_sd", s.size_log_sd);
  get("features", s.features);
  get("signal", s.signal);
  get("release_interval_days", s.release_interval_days);
  get("project_offset_days", s.project_offset_days);
  get("max_fix_delay_days", s.max_fix_delay_days);
  get("overlap_probability", s.overlap_probability);
  get("project_prefix", s.project_prefix);
  if (auto it = j.find("start"); it != j.end()) s.start = parse_timestamp(it->get<std::string>());
}

namespace {

std::string numbered(const std::string& prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, n);
  return prefix + buf;
}

Release generate_release(const SyntheticSpec& spec, std::size_t project,
                         std::size_t index, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> count_dist(spec.min_artifacts,
                                                        spec.max_artifacts);
  std::uniform_real_distribution<double> ratio_dist(spec.min_defect_ratio,
                                                    spec.max_defect_ratio);
  std::lognormal_distribution<double> size_dist(spec.size_log_mean, spec.size_log_sd);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::size_t n = count_dist(rng);
  const double ratio = ratio_dist(rng);
  const double release_signal = spec.signal * (0.5 + unit(rng));
  const std::size_t n_defective =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(ratio * n)), 1, n);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::uint8_t> defective(n, 0);
  std::vector<std::size_t> defective_positions(order.begin(), order.begin() + n_defective);
  for (std::size_t p : defective_positions) defective[p] = 1;

  std::vector<std::string> names;
  names.push_back("log_lloc");
  for (std::size_t j = 1; j < spec.features; ++j) names.push_back(numbered("m", j, 2));

  std::vector<Artifact> artifacts(n);
  for (std::size_t i = 0; i < n; ++i) {
    Artifact& a = artifacts[i];
    a.id = numbered("src/File", i, 4) + ".java";
    a.size = static_cast<std::int64_t>(std::llround(size_dist(rng)));
    a.features.resize(spec.features);
    a.features[0] = std::log1p(static_cast<double>(a.size));
    for (std::size_t j = 1; j < spec.features; ++j) {
      const double shift = defective[i] ? release_signal : 0.0;
      a.features[j] = std::max(0.0, 3.0 + noise(rng) + shift);
    }
  }

  const Timestamp released_at = days_after(
      spec.start, static_cast<int>(project) * spec.project_offset_days +
                      static_cast<int>(index) * spec.release_interval_days);
  std::uniform_int_distribution<int> footprint(1, 3);
  std::uniform_int_distribution<int> delay(1, spec.max_fix_delay_days);
  std::uniform_int_distribution<std::size_t> any_defective(0, n_defective - 1);
  std::vector<Defect> defects;
  for (std::size_t i = 0; i < n_defective;) {
    const std::size_t take =
        std::min<std::size_t>(static_cast<std::size_t>(footprint(rng)), n_defective - i);
    Defect d;
    d.id = numbered("BUG-", defects.size() + 1, 4);
    for (std::size_t t = 0; t < take; ++t) {
      d.artifacts.push_back(artifacts[defective_positions[i + t]].id);
    }
    if (take < 3 && unit(rng) < spec.overlap_probability) {
      d.artifacts.push_back(artifacts[defective_positions[any_defective(rng)]].id);
    }
    std::sort(d.artifacts.begin(), d.artifacts.end());
    d.artifacts.erase(std::unique(d.artifacts.begin(), d.artifacts.end()), d.artifacts.end());
    d.fixed_at = days_after(released_at, delay(rng));
    defects.push_back(std::move(d));
    i += take;
  }

  return Release::create(numbered(spec.project_prefix, project + 1, 2),
                         numbered("r", index + 1, 2), released_at,
                         std::move(artifacts), std::move(defects), std::move(names));
}

}  // namespace

std::vector<Release> generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::vector<Release> releases;
  releases.reserve(spec.projects * spec.releases_per_project);
  for (std::size_t p = 0; p < spec.projects; ++p) {
    for (std::size_t r = 0; r < spec.releases_per_project; ++r) {
      releases.push_back(generate_release(spec, p, r, derive_seed(seed, p, r)));
    }
  }
  return releases;
}

}  // namespace costbound
