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

#ifndef COSTBOUND_RECORDS_H_
#define COSTBOUND_RECORDS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "costbound/confounders.h"
#include "costbound/cost_model.h"
#include "costbound/metrics.h"
#include "costbound/release.h"

namespace costbound {

struct EvaluationRecord {
  std::string scenario;      // bootstrap, cross_version, cross_project or external
  std::string project;
  std::string release;
  std::string train_source;  // where the training data came from
  std::string variant;       // plain or oversampled
  std::string model;
  std::int64_t sample = 0;
  std::uint64_t seed = 0;
  MetricVector metrics;
  ConfounderVector confounders;
  CostBounds bounds;
  PotentialLevel potential = PotentialLevel::none;
};

// Fills metrics, confounders, bounds and potential of `record`.
void evaluate_record(EvaluationRecord& record, const EvaluationView& test,
                     const Prediction& prediction, const TrainingSummary& train,
                     const TrainingSummary& train_after, const Boundaries& boundaries = {});

// The 30 analysis variables (20 metrics, then 10 confounders).
inline constexpr std::size_t kVariableCount = MetricVector::kCount + ConfounderVector::kCount;
std::vector<std::string> variable_names();
std::vector<double> variable_values(const EvaluationRecord& record);

std::vector<std::string> records_csv_header();
void write_records_csv(std::ostream& out, const std::vector<EvaluationRecord>& records);
void write_records_csv(const std::filesystem::path& file,
                       const std::vector<EvaluationRecord>& records);
std::vector<EvaluationRecord> read_records_csv(std::istream& in, const std::string& source = "records");
std::vector<EvaluationRecord> read_records_csv(const std::filesystem::path& file);

void to_json(nlohmann::json& j, const EvaluationRecord& r);
void from_json(const nlohmann::json& j, EvaluationRecord& r);
void write_records_jsonl(std::ostream& out, const std::vector<EvaluationRecord>& records);
void write_records_jsonl(const std::filesystem::path& file,
                         const std::vector<EvaluationRecord>& records);

}  // namespace costbound

#endif  // COSTBOUND_RECORDS_H_
