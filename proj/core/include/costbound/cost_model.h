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

#ifndef COSTBOUND_COST_MODEL_H_
#define COSTBOUND_COST_MODEL_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "costbound/metrics.h"
#include "costbound/release.h"

namespace costbound {

// Extended-real arithmetic used by the cost bounds. NaN is "undefined".
//
//   a - b     | b finite | b = +inf | b = -inf | b undefined
//   ----------+----------+----------+----------+------------
//   finite    | a - b    | -inf     | +inf     | undefined
//   +inf      | +inf     | undefined| +inf     | undefined
//   -inf      | -inf     | -inf     | undefined| undefined
//   undefined | undefined| undefined| undefined| undefined
double extended_subtract(double a, double b);

// Bound quotient over a group of artifacts: undefined when the group is
// empty, +inf when it is non-empty but no defect is attributed to it.
double bound_ratio(double size_sum, std::size_t group_count, std::size_t defect_count);

// Which defects are fully predicted (every artifact has h = 1) and which are
// missed. Both hold indices into view.defects, ascending.
struct DefectOutcome {
  std::vector<std::size_t> predicted;
  std::vector<std::size_t> missed;
};

DefectOutcome defect_outcome(const EvaluationView& view, const Prediction& pred);

// lower and upper bracket the cost ratio C = C_DEF / C_QA for which the
// prediction beats both trivial models; diff = upper - lower.
struct CostBounds {
  double lower = kUndefined;
  double upper = kUndefined;
  double diff = kUndefined;
};

CostBounds cost_bounds(const EvaluationView& view, const Prediction& pred);

// diff with fn and tp in place of |D_MISS| and |D_PRED|.
double diff_simplified(const EvaluationView& view, const Prediction& pred);

enum class PotentialLevel { none = 0, medium = 1, large = 2, extra_large = 3 };

inline constexpr std::size_t kPotentialLevels = 4;
inline constexpr std::array<std::string_view, kPotentialLevels> kPotentialNames = {
    "none", "medium", "large", "extra_large"};

std::string_view to_string(PotentialLevel level);
// Throws DataError for unknown names.
PotentialLevel parse_potential(std::string_view name);

struct Boundaries {
  double medium_large = 1000.0;
  double large_extra = 10000.0;

  // Throws std::invalid_argument unless 0 < medium_large < large_extra.
  void validate() const;
  Boundaries scaled(double factor) const {
    return {medium_large * factor, large_extra * factor};
  }
};

// none:  diff <= 0 or undefined;  medium: (0, b1];  large: (b1, b2];
// extra_large: (b2, +inf].
PotentialLevel classify_potential(double diff, const Boundaries& b = {});

// Bounds serialize with "inf", "-inf" and "nan" sentinel strings.
void to_json(nlohmann::json& j, const CostBounds& b);
void from_json(const nlohmann::json& j, CostBounds& b);
nlohmann::json extended_to_json(double v);
double extended_from_json(const nlohmann::json& j);

}  // namespace costbound

#endif  // COSTBOUND_COST_MODEL_H_
