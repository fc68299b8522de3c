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

#include "costbound/records.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "costbound/release_io.h"

namespace costbound {

void evaluate_record(EvaluationRecord& record, const EvaluationView& test,
                     const Prediction& prediction, const TrainingSummary& train,
                     const TrainingSummary& train_after, const Boundaries& boundaries) {
  record.metrics = evaluate_metrics(test, prediction);
  record.confounders = compute_confounders(train, train_after, test);
  record.bounds = cost_bounds(test, prediction);
  record.potential = classify_potential(record.bounds.diff, boundaries);
}

std::vector<std::string> variable_names() {
  std::vector<std::string> names;
  for (auto n : MetricVector::kNames) names.emplace_back(n);
  for (auto n : ConfounderVector::kNames) names.emplace_back(n);
  return names;
}

std::vector<double> variable_values(const EvaluationRecord& record) {
  std::vector<double> v;
  v.reserve(kVariableCount);
  for (double x : record.metrics.values()) v.push_back(x);
  for (double x : record.confounders.values()) v.push_back(x);
  return v;
}

namespace {

constexpr std::size_t kIdentityColumns = 8;

}  // namespace

std::vector<std::string> records_csv_header() {
  std::vector<std::string> h = {"scenario", "project", "release", "train_source",
                                "variant",  "model",   "sample",  "seed"};
  for (auto& n : variable_names()) h.push_back(n);
  h.insert(h.end(), {"lower", "upper", "diff", "potential"});
  return h;
}

void write_records_csv(std::ostream& out, const std::vector<EvaluationRecord>& records) {
  const auto header = records_csv_header();
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : records) {
    out << csv_escape(r.scenario) << ',' << csv_escape(r.project) << ',' << csv_escape(r.release)
        << ',' << csv_escape(r.train_source) << ',' << csv_escape(r.variant) << ','
        << csv_escape(r.model) << ',' << r.sample << ',' << r.seed;
    for (double v : variable_values(r)) out << ',' << format_double(v);
    out << ',' << format_double(r.bounds.lower) << ',' << format_double(r.bounds.upper) << ','
        << format_double(r.bounds.diff) << ',' << to_string(r.potential) << '\n';
  }
}

void write_records_csv(const std::filesystem::path& file,
                       const std::vector<EvaluationRecord>& records) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  write_records_csv(out, records);
}

std::vector<EvaluationRecord> read_records_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source + ": empty records file");
  const auto expected = records_csv_header();
  if (split_csv_line(line) != expected) throw DataError(source + ":1: unexpected header");
  std::vector<EvaluationRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (f.size() != expected.size()) throw DataError(where + ": wrong column count");
    try {
      EvaluationRecord r;
      r.scenario = f[0];
      r.project = f[1];
      r.release = f[2];
      r.train_source = f[3];
      r.variant = f[4];
      r.model = f[5];
      r.sample = std::stoll(f[6]);
      r.seed = std::stoull(f[7]);
      std::vector<double> v;
      for (std::size_t i = 0; i < kVariableCount; ++i) v.push_back(parse_double(f[kIdentityColumns + i]));
      r.metrics = MetricVector::from_values(std::span(v).subspan(0, MetricVector::kCount));
      r.confounders = ConfounderVector::from_values(std::span(v).subspan(MetricVector::kCount));
      const std::size_t b = kIdentityColumns + kVariableCount;
      r.bounds = {parse_double(f[b]), parse_double(f[b + 1]), parse_double(f[b + 2])};
      r.potential = parse_potential(f[b + 3]);
      out.push_back(std::move(r));
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    } catch (const std::exception& e) {
      throw DataError(where + ": " + e.what());
    }
  }
  return out;
}

std::vector<EvaluationRecord> read_records_csv(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cannot open " + file.string());
  return read_records_csv(in, file.string());
}

void to_json(nlohmann::json& j, const EvaluationRecord& r) {
  j = {{"scenario", r.scenario},
       {"project", r.project},
       {"release", r.release},
       {"train_source", r.train_source},
       {"variant", r.variant},
       {"model", r.model},
       {"sample", r.sample},
       {"seed", r.seed},
       {"metrics", r.metrics},
       {"confounders", r.confounders},
       {"bounds", r.bounds},
       {"potential", to_string(r.potential)}};
}

void from_json(const nlohmann::json& j, EvaluationRecord& r) {
  r.scenario = j.at("scenario").get<std::string>();
  r.project = j.at("project").get<std::string>();
  r.release = j.at("release").get<std::string>();
  r.train_source = j.at("train_source").get<std::string>();
  r.variant = j.at("variant").get<std::string>();
  r.model = j.at("model").get<std::string>();
  r.sample = j.at("sample").get<std::int64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.metrics = j.at("metrics").get<MetricVector>();
  r.confounders = j.at("confounders").get<ConfounderVector>();
  r.bounds = j.at("bounds").get<CostBounds>();
  r.potential = parse_potential(j.at("potential").get<std::string>());
}

void write_records_jsonl(std::ostream& out, const std::vector<EvaluationRecord>& records) {
  for (const auto& r : records) out << nlohmann::json(r).dump() << '\n';
}

void write_records_jsonl(const std::filesystem::path& file,
                         const std::vector<EvaluationRecord>& records) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  write_records_jsonl(out, records);
}

}  // namespace costbound
