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

#ifndef COSTBOUND_ANALYSIS_H_
#define COSTBOUND_ANALYSIS_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "costbound/cost_model.h"
#include "costbound/learners/decision_tree.h"
#include "costbound/learners/differential_evolution.h"
#include "costbound/learners/logit.h"
#include "costbound/learners/matrix.h"
#include "costbound/learners/random_forest.h"
#include "costbound/records.h"

namespace costbound {

// The 30 variables of each record as rows; undefined values stay NaN.
Matrix variable_matrix(const std::vector<EvaluationRecord>& records);
// Potential levels as 0..3. Without boundaries the stored labels are used,
// otherwise diff is binned again.
std::vector<int> potential_levels(const std::vector<EvaluationRecord>& records);
std::vector<int> potential_levels(const std::vector<EvaluationRecord>& records,
                                  const Boundaries& boundaries);

// Per-variable medians of the finite training values; used to fill in
// undefined and infinite entries.
struct Imputation {
  std::vector<double> medians;
  std::vector<std::size_t> missing;  // entries filled per variable on the fitting data

  static Imputation fit(const Matrix& x);
  Matrix apply(const Matrix& x) const;
  nlohmann::json to_json(const std::vector<std::string>& names) const;
};

enum class RelationshipKind { logit, tree, forest };
inline constexpr std::array<RelationshipKind, 3> kRelationshipKinds = {
    RelationshipKind::logit, RelationshipKind::tree, RelationshipKind::forest};
std::string_view to_string(RelationshipKind kind);

struct RelationshipOptions {
  LogitOptions logit;
  std::size_t tree_depth = 5;
  ForestParams forest;
  bool tune_forest = false;  // DE on OOB accuracy over the forest parameters
  std::size_t tuning_trees = 25;
  DeOptions de;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  bool fit_logit = true;
};

struct RelationshipModels {
  std::vector<std::string> variables;
  Imputation imputation;
  LogitModel logit;
  bool has_logit = false;
  DecisionTree tree;
  RandomForest forest;
  std::vector<double> tree_importance;
  std::vector<double> forest_importance;

  // `x` holds raw variables; imputation is applied here.
  std::vector<int> predict(RelationshipKind kind, const Matrix& x) const;
  std::vector<int> predict(RelationshipKind kind,
                           const std::vector<EvaluationRecord>& records) const;
};

// Throws DataError when fewer than two potential levels are present.
RelationshipModels fit_relationship_models(const std::vector<EvaluationRecord>& records,
                                           const RelationshipOptions& options = {});
RelationshipModels fit_relationship_models(const Matrix& x, std::span<const int> levels,
                                           std::vector<std::string> names,
                                           const RelationshipOptions& options = {});

// Rows are predicted levels, columns the true levels.
struct PotentialConfusion {
  std::array<std::array<std::int64_t, kPotentialLevels>, kPotentialLevels> counts{};

  std::int64_t total() const;
  std::int64_t column_total(std::size_t truth) const;
};

struct ClassSummary {
  std::int64_t support = 0;
  double correct = kUndefined;
  double over_moderate = kUndefined;  // upper neighbor
  double over_total = kUndefined;
  double under_moderate = kUndefined;  // lower neighbor
  double under_total = kUndefined;
};

enum class Strength { none, classification, weak_categorization, strong_categorization };
std::string_view to_string(Strength s);

struct StrengthVerdict {
  Strength verdict = Strength::none;
  double none_correct = kUndefined;      // true none predicted none
  double saving_detected = kUndefined;   // true cost saving predicted not none
  double neighbor_min = kUndefined;      // worst cost saving level, correct or neighbor
  double level_correct_min = kUndefined; // worst level, correct
};

struct ConfusionEvaluation {
  PotentialConfusion matrix;
  std::array<ClassSummary, kPotentialLevels> classes;
  StrengthVerdict verdict;
  double accuracy = kUndefined;
};

PotentialConfusion confusion_matrix(std::span<const int> predicted, std::span<const int> truth);
std::array<ClassSummary, kPotentialLevels> summarize_classes(const PotentialConfusion& m);
// Levels without instances are not held against a rule.
StrengthVerdict classify_strength(const PotentialConfusion& m);
ConfusionEvaluation evaluate_confusion(std::span<const int> predicted, std::span<const int> truth);
ConfusionEvaluation evaluate_confusion(const RelationshipModels& models, RelationshipKind kind,
                                       const std::vector<EvaluationRecord>& records);
nlohmann::json to_json(const ConfusionEvaluation& e);

struct CorrelationResult {
  std::vector<std::string> names;
  Matrix rho;
  std::vector<std::vector<std::size_t>> groups;  // connected components of |rho| > threshold
};

CorrelationResult correlation_analysis(const Matrix& x, std::vector<std::string> names,
                                       double threshold = 0.8);
CorrelationResult correlation_analysis(const std::vector<EvaluationRecord>& records,
                                       double threshold = 0.8);

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

struct DistributionSummary {
  std::size_t total = 0;
  std::size_t positive = 0;  // finite and > 0
  std::size_t zero = 0;
  std::size_t negative = 0;  // finite and < 0
  std::size_t positive_infinite = 0;
  std::size_t negative_infinite = 0;
  std::size_t undefined = 0;
  std::array<std::size_t, kPotentialLevels> levels{};
  double lg_mean = kUndefined;
  double lg_sd = kUndefined;
  std::vector<HistogramBin> histogram;
  std::vector<std::pair<double, double>> qq;  // (normal quantile, sample quantile)
};

DistributionSummary distribution_export(std::span<const double> diffs,
                                        std::span<const int> levels = {},
                                        double bin_width = 0.1, std::size_t max_qq_points = 1000);
DistributionSummary distribution_export(const std::vector<EvaluationRecord>& records,
                                        double bin_width = 0.1, std::size_t max_qq_points = 1000);
nlohmann::json to_json(const DistributionSummary& d);

struct BoundaryDensity {
  double boundary = 0.0;
  std::size_t in_window = 0;          // diff within +-10% of the boundary
  double lower_level_share = kUndefined;
  double upper_level_share = kUndefined;
  bool dense = false;                 // a share above 20%
};

struct SensitivityShift {
  double factor = 1.0;
  Boundaries boundaries;
  std::array<std::size_t, kPotentialLevels> levels{};
  std::array<BoundaryDensity, 2> density;
  ConfusionEvaluation confusion;  // out-of-bag forest predictions
  bool fitted = false;            // false when fewer than two levels remain
};

std::vector<double> record_diffs(const std::vector<EvaluationRecord>& records);
std::array<BoundaryDensity, 2> boundary_density(std::span<const double> diffs,
                                                const Boundaries& boundaries);

std::vector<SensitivityShift> sensitivity_boundaries(
    const std::vector<EvaluationRecord>& records, std::uint64_t seed,
    const Boundaries& base = {}, const std::vector<double>& factors = {0.9, 1.0, 1.1},
    const ForestParams& forest = {}, std::size_t jobs = 1);

struct RegressionResult {
  std::size_t train_count = 0;
  std::size_t eval_count = 0;
  double r2_train = kUndefined;
  double r2_eval = kUndefined;
};

// Coefficient of determination; undefined for a constant target.
double r_squared(std::span<const double> truth, std::span<const double> predicted);

// Forest regression of lg(diff) on the 30 variables, fitted on the records
// with a finite positive diff. Throws DataError with fewer than two such
// records on either side.
RegressionResult sensitivity_regression(const std::vector<EvaluationRecord>& train,
                                        const std::vector<EvaluationRecord>& eval,
                                        std::uint64_t seed, std::size_t jobs = 1);

nlohmann::json to_json(const std::vector<SensitivityShift>& shifts);
nlohmann::json to_json(const RegressionResult& r);

}  // namespace costbound

#endif  // COSTBOUND_ANALYSIS_H_
