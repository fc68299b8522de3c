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

#ifndef COSTBOUND_RELEASE_H_
#define COSTBOUND_RELEASE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "costbound/timestamp.h"

namespace costbound {

struct Artifact {
  std::string id;
  std::int64_t size = 0;  // logical lines of code
  std::vector<double> features;

  bool operator==(const Artifact&) const = default;
};

struct Defect {
  std::string id;
  std::vector<std::string> artifacts;
  std::optional<Timestamp> fixed_at;

  bool operator==(const Defect&) const = default;
};

// One release of one project: the artifact set S, the defect set D and the
// many-to-many map between them. Defectiveness is derived from the defect
// map; it is never stored on the artifacts. Immutable once created.
class Release {
 public:
  // Validates every invariant and throws DataError naming the violation.
  static Release create(std::string project, std::string release_id,
                        Timestamp released_at, std::vector<Artifact> artifacts,
                        std::vector<Defect> defects,
                        std::vector<std::string> feature_names = {});

  const std::string& project() const { return project_; }
  const std::string& release_id() const { return release_id_; }
  Timestamp released_at() const { return released_at_; }
  const std::vector<Artifact>& artifacts() const { return artifacts_; }
  const std::vector<Defect>& defects() const { return defects_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }

  std::size_t size() const { return artifacts_.size(); }
  std::size_t feature_count() const { return feature_names_.size(); }

  // Artifact positions affected by defect d, sorted ascending.
  const std::vector<std::size_t>& defect_members(std::size_t d) const {
    return defect_members_[d];
  }
  bool is_defective(std::size_t artifact) const {
    return defective_[artifact] != 0;
  }
  std::size_t defective_count() const { return defective_count_; }
  std::size_t clean_count() const { return size() - defective_count_; }
  double defect_ratio() const;
  std::optional<std::size_t> index_of(std::string_view id) const;

  // "project/release", used in notices and error messages.
  std::string label() const { return project_ + "/" + release_id_; }

  // Copy keeping only defects whose fix is strictly before `cutoff`. Defects
  // without a fix timestamp are kept.
  Release with_defects_fixed_before(Timestamp cutoff) const;

  bool operator==(const Release& other) const;

 private:
  Release() = default;

  std::string project_;
  std::string release_id_;
  Timestamp released_at_{};
  std::vector<Artifact> artifacts_;
  std::vector<Defect> defects_;
  std::vector<std::string> feature_names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> defect_members_;
  std::vector<std::uint8_t> defective_;
  std::size_t defective_count_ = 0;
};

// The evaluation-side projection of a release: sizes, ground truth h* and the
// defects restricted to the artifacts in view. Positions in a view are
// 0..size()-1; every per-artifact vector in this library is aligned to them.
struct EvaluationView {
  std::vector<std::string> ids;
  std::vector<std::int64_t> sizes;
  std::vector<std::uint8_t> defective;
  std::vector<std::string> defect_ids;
  std::vector<std::vector<std::size_t>> defects;  // positions within the view

  std::size_t size() const { return ids.size(); }
  std::size_t defective_count() const;
  std::int64_t total_size() const;

  // Whole release.
  static EvaluationView of(const Release& release);
  // Distinct artifacts given by release positions. A defect enters the view
  // with the part of its footprint that lies inside the view, and is dropped
  // if that part is empty.
  static EvaluationView of(const Release& release,
                           std::span<const std::size_t> positions);
  // Hand-built view; defects are lists of artifact ids. Throws DataError on
  // unknown ids, empty defects or negative sizes.
  static EvaluationView create(
      std::vector<std::string> ids, std::vector<std::int64_t> sizes,
      const std::vector<std::pair<std::string, std::vector<std::string>>>& defects);
};

}  // namespace costbound

#endif  // COSTBOUND_RELEASE_H_
