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

#ifndef COSTBOUND_METRICS_H_
#define COSTBOUND_METRICS_H_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "costbound/common.h"
#include "costbound/release.h"

namespace costbound {

// Scores h'(s) aligned to the positions of an EvaluationView. The label is
// h(s) = 1 iff h'(s) > threshold.
class Prediction {
 public:
  static constexpr double kDefaultThreshold = 0.5;

  // Throws std::invalid_argument if a score lies outside [0, 1].
  explicit Prediction(std::vector<double> scores,
                      double threshold = kDefaultThreshold);
  static Prediction from_labels(std::span<const int> labels);
  // Scores keyed by artifact id. Throws DataError unless the key set equals
  // the view's artifact set.
  static Prediction from_map(const EvaluationView& view,
                             const std::map<std::string, double>& scores,
                             double threshold = kDefaultThreshold);

  std::size_t size() const { return scores_.size(); }
  double threshold() const { return threshold_; }
  double score(std::size_t i) const { return scores_[i]; }
  bool label(std::size_t i) const { return scores_[i] > threshold_; }
  std::span<const double> scores() const { return scores_; }

 private:
  std::vector<double> scores_;
  double threshold_;
};

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionCounts&) const = default;
};

// The twenty performance metrics. Undefined values are NaN.
struct MetricVector {
  double recall = kUndefined;
  double precision = kUndefined;
  double fpr = kUndefined;
  double f_measure = kUndefined;
  double g_measure = kUndefined;
  double balance = kUndefined;
  double accuracy = kUndefined;
  double error = kUndefined;
  double error_type1 = kUndefined;
  double error_type2 = kUndefined;
  double mcc = kUndefined;
  double consistency = kUndefined;
  double auc = kUndefined;
  double auc_alberg = kUndefined;
  double auc_recall_pf = kUndefined;
  double necm10 = kUndefined;
  double necm25 = kUndefined;
  double cost = kUndefined;
  double nofb20 = kUndefined;
  double nofc80 = kUndefined;

  static constexpr std::size_t kCount = 20;
  static const std::array<std::string_view, kCount> kNames;

  std::array<double, kCount> values() const;
  static MetricVector from_values(std::span<const double> values);
};

// Serialized as a flat object keyed by kNames; NaN becomes null.
void to_json(nlohmann::json& j, const MetricVector& m);
void from_json(const nlohmann::json& j, MetricVector& m);

// How the effort metrics count what they find.
enum class InspectionMode {
  defect_complete,  // a defect counts once all of its artifacts are inspected
  defective_files,  // every inspected defective artifact counts
};

// Throws DataError when the prediction does not cover the view.
ConfusionCounts confusion_counts(const EvaluationView& view, const Prediction& pred);

// Fills the twelve confusion-matrix metrics and both NECM values; the ranking
// and effort fields stay NaN.
MetricVector confusion_metrics(const ConfusionCounts& c);

// Mann-Whitney AUC with ties counted one half; NaN for one-class input.
double auc(std::span<const std::uint8_t> truth, std::span<const double> scores);

// Inspection order: descending score, then descending size, then artifact id.
std::vector<std::size_t> inspection_order(const EvaluationView& view,
                                          std::span<const double> scores);

// Trapezoid area under (fraction of artifacts inspected, fraction of
// defective artifacts found) along inspection_order. NaN without defects.
double auc_alberg(const EvaluationView& view, std::span<const double> scores);

// Area where the ROC curve lies above the chance diagonal, divided by 1/2.
double auc_recall_pf(std::span<const std::uint8_t> truth, std::span<const double> scores);

struct EffortMetrics {
  double cost = 0;    // sum of sizes predicted defective
  double nofb20 = 0;  // found within 20% of the total size
  double nofc80 = 0;  // artifacts inspected until 80% is found; NaN if never
};

EffortMetrics effort_metrics(const EvaluationView& view, const Prediction& pred,
                             InspectionMode mode = InspectionMode::defect_complete);

// All twenty metrics for one evaluation.
MetricVector evaluate_metrics(const EvaluationView& view, const Prediction& pred,
                              InspectionMode mode = InspectionMode::defect_complete);

}  // namespace costbound

#endif  // COSTBOUND_METRICS_H_
