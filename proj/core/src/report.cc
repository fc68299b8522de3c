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

#include "costbound/report.h"

#include <fstream>

#include <nlohmann/json.hpp>

#include "costbound/common.h"
#include "costbound/release_io.h"

namespace costbound {

void write_json_file(const std::filesystem::path& file, const nlohmann::json& j) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << j.dump(2) << '\n';
}

void write_correlations_csv(const std::filesystem::path& file, const CorrelationResult& c) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "variable";
  for (const auto& n : c.names) out << ',' << csv_escape(n);
  out << ",group\n";
  std::vector<std::size_t> group_of(c.names.size(), 0);
  for (std::size_t g = 0; g < c.groups.size(); ++g) {
    for (std::size_t v : c.groups[g]) group_of[v] = g;
  }
  for (std::size_t a = 0; a < c.names.size(); ++a) {
    out << csv_escape(c.names[a]);
    for (std::size_t b = 0; b < c.names.size(); ++b) out << ',' << format_double(c.rho(a, b));
    out << ',' << group_of[a] << '\n';
  }
}

nlohmann::json sensitivity_report(const std::vector<EvaluationRecord>& train,
                                  const std::vector<EvaluationRecord>& eval,
                                  const ReportOptions& options) {
  nlohmann::json j;
  j["boundaries"] = to_json(sensitivity_boundaries(train, derive_seed(options.seed, 21),
                                                   options.boundaries, options.shift_factors,
                                                   options.sensitivity_forest, options.jobs));
  if (eval.empty()) {
    j["regression"] = nullptr;
  } else {
    try {
      j["regression"] =
          to_json(sensitivity_regression(train, eval, derive_seed(options.seed, 22), options.jobs));
    } catch (const DataError& e) {
      j["regression"] = nullptr;
      j["regression_skipped"] = e.what();
    }
  }
  return j;
}

namespace {

nlohmann::json importances(const std::vector<std::string>& names, const std::vector<double>& v) {
  nlohmann::json arr = nlohmann::json::array();
  std::vector<std::size_t> order(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  for (std::size_t i : order) arr.push_back({{"variable", names[i]}, {"importance", v[i]}});
  return arr;
}

}  // namespace

ReportSummary write_report(const std::filesystem::path& dir,
                           const std::vector<EvaluationRecord>& train,
                           const std::vector<EvaluationRecord>& eval,
                           const ReportOptions& options) {
  std::filesystem::create_directories(dir);
  ReportSummary summary;
  auto emit = [&](const std::string& name, const nlohmann::json& j) {
    write_json_file(dir / name, j);
    summary.files.push_back(name);
  };

  write_records_csv(dir / "records.csv", train);
  summary.files.push_back("records.csv");

  const CorrelationResult corr = correlation_analysis(train, options.correlation_threshold);
  write_correlations_csv(dir / "correlations.csv", corr);
  summary.files.push_back("correlations.csv");
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : corr.groups) {
    nlohmann::json names = nlohmann::json::array();
    for (std::size_t v : g) names.push_back(corr.names[v]);
    groups.push_back(std::move(names));
  }
  emit("correlation_groups.json", {{"threshold", options.correlation_threshold}, {"groups", groups}});

  emit("distribution.json", to_json(distribution_export(train)));

  RelationshipOptions ro = options.relationship;
  ro.seed = derive_seed(options.seed, 20);
  ro.jobs = options.jobs;
  const RelationshipModels models = fit_relationship_models(train, ro);
  emit("imputation.json", models.imputation.to_json(models.variables));

  nlohmann::json verdicts = nlohmann::json::object();
  for (RelationshipKind kind : kRelationshipKinds) {
    if (kind == RelationshipKind::logit && !models.has_logit) continue;
    const std::string name(to_string(kind));
    nlohmann::json confusion;
    const ConfusionEvaluation on_train = evaluate_confusion(models, kind, train);
    confusion["train"] = to_json(on_train);
    summary.train_verdicts.emplace_back(name, on_train.verdict.verdict);
    verdicts[name]["train"] = to_string(on_train.verdict.verdict);
    if (!eval.empty()) {
      const ConfusionEvaluation on_eval = evaluate_confusion(models, kind, eval);
      confusion["eval"] = to_json(on_eval);
      summary.eval_verdicts.emplace_back(name, on_eval.verdict.verdict);
      verdicts[name]["eval"] = to_string(on_eval.verdict.verdict);
    }
    emit("confusion_" + name + ".json", confusion);

    switch (kind) {
      case RelationshipKind::logit:
        emit("importances_logit.json", models.logit.to_json(models.variables));
        break;
      case RelationshipKind::tree:
        emit("importances_tree.json", importances(models.variables, models.tree_importance));
        emit("model_tree.json", models.tree.to_json());
        break;
      case RelationshipKind::forest:
        emit("importances_forest.json", importances(models.variables, models.forest_importance));
        emit("model_forest.json", models.forest.to_json());
        break;
    }
  }
  emit("verdicts.json", verdicts);

  if (options.sensitivity) {
    const nlohmann::json sensitivity = sensitivity_report(train, eval, options);
    if (sensitivity.contains("regression_skipped")) {
      summary.regression_skipped = sensitivity["regression_skipped"].get<std::string>();
    }
    emit("sensitivity.json", sensitivity);
  }
  return summary;
}

}  // namespace costbound
