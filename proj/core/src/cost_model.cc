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

#include "costbound/cost_model.h"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace costbound {

double extended_subtract(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return kUndefined;
  if (std::isinf(a) && std::isinf(b)) {
    // Same-signed infinities cancel to nothing meaningful.
    if ((a > 0) == (b > 0)) return kUndefined;
    return a;
  }
  if (std::isinf(a)) return a;
  if (std::isinf(b)) return -b;
  return a - b;
}

double bound_ratio(double size_sum, std::size_t group_count, std::size_t defect_count) {
  if (group_count == 0) return kUndefined;
  if (defect_count == 0) return kInfinity;
  return size_sum / static_cast<double>(defect_count);
}

DefectOutcome defect_outcome(const EvaluationView& view, const Prediction& pred) {
  if (pred.size() != view.size()) {
    throw DataError("prediction size does not match the evaluation set");
  }
  DefectOutcome out;
  for (std::size_t d = 0; d < view.defects.size(); ++d) {
    bool all = true;
    for (std::size_t p : view.defects[d]) {
      if (!pred.label(p)) {
        all = false;
        break;
      }
    }
    (all ? out.predicted : out.missed).push_back(d);
  }
  return out;
}

namespace {

struct SizeSplit {
  double predicted_size = 0;
  double unpredicted_size = 0;
  std::size_t predicted = 0;
  std::size_t unpredicted = 0;
};

SizeSplit split_sizes(const EvaluationView& view, const Prediction& pred) {
  SizeSplit s;
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (pred.label(i)) {
      s.predicted_size += static_cast<double>(view.sizes[i]);
      ++s.predicted;
    } else {
      s.unpredicted_size += static_cast<double>(view.sizes[i]);
      ++s.unpredicted;
    }
  }
  return s;
}

}  // namespace

CostBounds cost_bounds(const EvaluationView& view, const Prediction& pred) {
  const DefectOutcome outcome = defect_outcome(view, pred);
  const SizeSplit s = split_sizes(view, pred);
  CostBounds b;
  b.lower = bound_ratio(s.predicted_size, s.predicted, outcome.predicted.size());
  b.upper = bound_ratio(s.unpredicted_size, s.unpredicted, outcome.missed.size());
  b.diff = extended_subtract(b.upper, b.lower);
  return b;
}

double diff_simplified(const EvaluationView& view, const Prediction& pred) {
  const ConfusionCounts c = confusion_counts(view, pred);
  const SizeSplit s = split_sizes(view, pred);
  const double lower = bound_ratio(s.predicted_size, s.predicted, static_cast<std::size_t>(c.tp));
  const double upper =
      bound_ratio(s.unpredicted_size, s.unpredicted, static_cast<std::size_t>(c.fn));
  return extended_subtract(upper, lower);
}

std::string_view to_string(PotentialLevel level) {
  return kPotentialNames[static_cast<std::size_t>(level)];
}

PotentialLevel parse_potential(std::string_view name) {
  for (std::size_t i = 0; i < kPotentialLevels; ++i) {
    if (kPotentialNames[i] == name) return static_cast<PotentialLevel>(i);
  }
  throw DataError("unknown potential level \"" + std::string(name) + "\"");
}

void Boundaries::validate() const {
  if (!(medium_large > 0.0 && medium_large < large_extra && std::isfinite(large_extra))) {
    throw std::invalid_argument("potential boundaries must satisfy 0 < b1 < b2 < inf");
  }
}

PotentialLevel classify_potential(double diff, const Boundaries& b) {
  b.validate();
  if (std::isnan(diff) || diff <= 0.0) return PotentialLevel::none;
  if (diff <= b.medium_large) return PotentialLevel::medium;
  if (diff <= b.large_extra) return PotentialLevel::large;
  return PotentialLevel::extra_large;
}

nlohmann::json extended_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double extended_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_null()) return kUndefined;
  const auto s = j.get<std::string>();
  if (s == "nan") return kUndefined;
  if (s == "inf") return kInfinity;
  if (s == "-inf") return -kInfinity;
  throw DataError("invalid extended real \"" + s + "\"");
}

void to_json(nlohmann::json& j, const CostBounds& b) {
  j = {{"lower", extended_to_json(b.lower)},
       {"upper", extended_to_json(b.upper)},
       {"diff", extended_to_json(b.diff)}};
}

void from_json(const nlohmann::json& j, CostBounds& b) {
  b.lower = extended_from_json(j.at("lower"));
  b.upper = extended_from_json(j.at("upper"));
  b.diff = extended_from_json(j.at("diff"));
}

}  // namespace costbound
