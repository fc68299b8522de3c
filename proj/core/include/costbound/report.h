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

#ifndef COSTBOUND_REPORT_H_
#define COSTBOUND_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "costbound/analysis.h"
#include "costbound/records.h"

namespace costbound {

struct ReportOptions {
  RelationshipOptions relationship;
  double correlation_threshold = 0.8;
  bool sensitivity = true;
  Boundaries boundaries;  // base of the boundary shifts
  std::vector<double> shift_factors = {0.9, 1.0, 1.1};
  ForestParams sensitivity_forest;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

struct ReportSummary {
  std::vector<std::string> files;
  std::vector<std::pair<std::string, Strength>> train_verdicts;
  std::vector<std::pair<std::string, Strength>> eval_verdicts;
  std::string regression_skipped;  // reason, when the eval records cannot be regressed
};

void write_json_file(const std::filesystem::path& file, const nlohmann::json& j);
void write_correlations_csv(const std::filesystem::path& file, const CorrelationResult& c);

// Sensitivity results as written to sensitivity.json; the regression is
// only run when `eval` is non-empty. When the records do not support it the
// regression is null and "regression_skipped" holds the reason.
nlohmann::json sensitivity_report(const std::vector<EvaluationRecord>& train,
                                  const std::vector<EvaluationRecord>& eval,
                                  const ReportOptions& options);

// Writes records.csv, correlations.csv, confusion_<model>.json,
// importances_<model>.json, model_<model>.json, distribution.json,
// sensitivity.json, imputation.json and verdicts.json into `dir`. Models
// are fitted on `train`; `eval` (possibly empty) is scored with them.
ReportSummary write_report(const std::filesystem::path& dir,
                           const std::vector<EvaluationRecord>& train,
                           const std::vector<EvaluationRecord>& eval,
                           const ReportOptions& options = {});

}  // namespace costbound

#endif  // COSTBOUND_REPORT_H_
