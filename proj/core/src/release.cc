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

#include "costbound/release.h"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "costbound/common.h"

namespace costbound {

Release Release::create(std::string project, std::string release_id,
                        Timestamp released_at, std::vector<Artifact> artifacts,
                        std::vector<Defect> defects,
                        std::vector<std::string> feature_names) {
  Release r;
  r.project_ = std::move(project);
  r.release_id_ = std::move(release_id);
  r.released_at_ = released_at;
  const std::string where = r.label();

  std::size_t k = feature_names.size();
  if (feature_names.empty() && !artifacts.empty()) {
    k = artifacts.front().features.size();
    for (std::size_t j = 0; j < k; ++j) {
      feature_names.push_back("f" + std::to_string(j + 1));
    }
  }
  r.index_.reserve(artifacts.size());
  for (std::size_t i = 0; i < artifacts.size(); ++i) {
    const Artifact& a = artifacts[i];
    if (a.id.empty()) throw DataError(where + ": empty artifact id");
    if (a.size < 0) {
      throw DataError(where + ": negative size for artifact \"" + a.id + "\"");
    }
    if (a.features.size() != k) {
      throw DataError(where + ": artifact \"" + a.id + "\" has " +
                      std::to_string(a.features.size()) + " features, expected " +
                      std::to_string(k));
    }
    if (!r.index_.emplace(a.id, i).second) {
      throw DataError(where + ": duplicate artifact id \"" + a.id + "\"");
    }
  }

  r.defective_.assign(artifacts.size(), 0);
  std::unordered_set<std::string> defect_ids;
  for (Defect& d : defects) {
    if (!defect_ids.insert(d.id).second) {
      throw DataError(where + ": duplicate defect id \"" + d.id + "\"");
    }
    if (d.artifacts.empty()) {
      throw DataError(where + ": defect \"" + d.id + "\" has no artifacts");
    }
    std::sort(d.artifacts.begin(), d.artifacts.end());
    d.artifacts.erase(std::unique(d.artifacts.begin(), d.artifacts.end()),
                      d.artifacts.end());
    std::vector<std::size_t> members;
    members.reserve(d.artifacts.size());
    for (const std::string& id : d.artifacts) {
      auto it = r.index_.find(id);
      if (it == r.index_.end()) {
        throw DataError(where + ": defect \"" + d.id +
                        "\" references unknown artifact id \"" + id + "\"");
      }
      members.push_back(it->second);
      r.defective_[it->second] = 1;
    }
    std::sort(members.begin(), members.end());
    r.defect_members_.push_back(std::move(members));
  }
  r.defective_count_ = static_cast<std::size_t>(
      std::count(r.defective_.begin(), r.defective_.end(), 1));
  r.artifacts_ = std::move(artifacts);
  r.defects_ = std::move(defects);
  r.feature_names_ = std::move(feature_names);
  return r;
}

double Release::defect_ratio() const {
  return artifacts_.empty() ? 0.0
                            : static_cast<double>(defective_count_) /
                                  static_cast<double>(artifacts_.size());
}

std::optional<std::size_t> Release::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Release Release::with_defects_fixed_before(Timestamp cutoff) const {
  std::vector<Defect> kept;
  for (const Defect& d : defects_) {
    if (!d.fixed_at || *d.fixed_at < cutoff) kept.push_back(d);
  }
  return create(project_, release_id_, released_at_, artifacts_, std::move(kept),
                feature_names_);
}

bool Release::operator==(const Release& other) const {
  return project_ == other.project_ && release_id_ == other.release_id_ &&
         released_at_ == other.released_at_ && artifacts_ == other.artifacts_ &&
         defects_ == other.defects_ && feature_names_ == other.feature_names_;
}

std::size_t EvaluationView::defective_count() const {
  return static_cast<std::size_t>(
      std::count(defective.begin(), defective.end(), 1));
}

std::int64_t EvaluationView::total_size() const {
  return std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
}

EvaluationView EvaluationView::of(const Release& release) {
  std::vector<std::size_t> all(release.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return of(release, all);
}

EvaluationView EvaluationView::of(const Release& release,
                                  std::span<const std::size_t> positions) {
  EvaluationView v;
  constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> view_pos(release.size(), kAbsent);
  for (std::size_t p : positions) {
    if (p >= release.size()) throw std::out_of_range("artifact position");
    if (view_pos[p] != kAbsent) continue;
    view_pos[p] = v.ids.size();
    v.ids.push_back(release.artifacts()[p].id);
    v.sizes.push_back(release.artifacts()[p].size);
  }
  v.defective.assign(v.ids.size(), 0);
  for (std::size_t d = 0; d < release.defects().size(); ++d) {
    std::vector<std::size_t> members;
    for (std::size_t p : release.defect_members(d)) {
      if (view_pos[p] != kAbsent) members.push_back(view_pos[p]);
    }
    if (members.empty()) continue;
    std::sort(members.begin(), members.end());
    for (std::size_t m : members) v.defective[m] = 1;
    v.defect_ids.push_back(release.defects()[d].id);
    v.defects.push_back(std::move(members));
  }
  return v;
}

EvaluationView EvaluationView::create(
    std::vector<std::string> ids, std::vector<std::int64_t> sizes,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& defects) {
  if (ids.size() != sizes.size()) {
    throw DataError("view: ids and sizes differ in length");
  }
  EvaluationView v;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (sizes[i] < 0) throw DataError("view: negative size for \"" + ids[i] + "\"");
    if (!index.emplace(ids[i], i).second) {
      throw DataError("view: duplicate artifact id \"" + ids[i] + "\"");
    }
  }
  v.ids = std::move(ids);
  v.sizes = std::move(sizes);
  v.defective.assign(v.ids.size(), 0);
  for (const auto& [defect_id, members] : defects) {
    if (members.empty()) throw DataError("view: defect \"" + defect_id + "\" is empty");
    std::vector<std::size_t> pos;
    for (const std::string& id : members) {
      auto it = index.find(id);
      if (it == index.end()) {
        throw DataError("view: unknown artifact id \"" + id + "\"");
      }
      pos.push_back(it->second);
      v.defective[it->second] = 1;
    }
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    v.defect_ids.push_back(defect_id);
    v.defects.push_back(std::move(pos));
  }
  return v;
}

}  // namespace costbound
