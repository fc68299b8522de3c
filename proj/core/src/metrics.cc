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

#include "costbound/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace costbound {

const std::array<std::string_view, MetricVector::kCount> MetricVector::kNames = {
    "recall",       "precision",  "fpr",         "f_measure",     "g_measure",
    "balance",      "accuracy",   "error",       "error_type1",   "error_type2",
    "mcc",          "consistency", "auc",        "auc_alberg",    "auc_recall_pf",
    "necm10",       "necm25",     "cost",        "nofb20",        "nofc80"};

std::array<double, MetricVector::kCount> MetricVector::values() const {
  return {recall, precision, fpr, f_measure, g_measure, balance, accuracy,
          error, error_type1, error_type2, mcc, consistency, auc, auc_alberg,
          auc_recall_pf, necm10, necm25, cost, nofb20, nofc80};
}

MetricVector MetricVector::from_values(std::span<const double> v) {
  if (v.size() != kCount) throw std::invalid_argument("MetricVector needs 20 values");
  MetricVector m;
  double* fields[] = {&m.recall, &m.precision, &m.fpr, &m.f_measure, &m.g_measure,
                      &m.balance, &m.accuracy, &m.error, &m.error_type1,
                      &m.error_type2, &m.mcc, &m.consistency, &m.auc,
                      &m.auc_alberg, &m.auc_recall_pf, &m.necm10, &m.necm25,
                      &m.cost, &m.nofb20, &m.nofc80};
  for (std::size_t i = 0; i < kCount; ++i) *fields[i] = v[i];
  return m;
}

void to_json(nlohmann::json& j, const MetricVector& m) {
  j = nlohmann::json::object();
  const auto v = m.values();
  for (std::size_t i = 0; i < MetricVector::kCount; ++i) {
    const std::string key(MetricVector::kNames[i]);
    j[key] = std::isnan(v[i]) ? nlohmann::json(nullptr) : nlohmann::json(v[i]);
  }
}

void from_json(const nlohmann::json& j, MetricVector& m) {
  std::array<double, MetricVector::kCount> v;
  for (std::size_t i = 0; i < MetricVector::kCount; ++i) {
    const auto& e = j.at(std::string(MetricVector::kNames[i]));
    v[i] = e.is_null() ? kUndefined : e.get<double>();
  }
  m = MetricVector::from_values(v);
}

Prediction::Prediction(std::vector<double> scores, double threshold)
    : scores_(std::move(scores)), threshold_(threshold) {
  for (double s : scores_) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw std::invalid_argument("prediction score outside [0, 1]");
    }
  }
}

Prediction Prediction::from_labels(std::span<const int> labels) {
  std::vector<double> scores(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) scores[i] = labels[i] ? 1.0 : 0.0;
  return Prediction(std::move(scores));
}

Prediction Prediction::from_map(const EvaluationView& view,
                                const std::map<std::string, double>& scores,
                                double threshold) {
  if (scores.size() != view.size()) {
    throw DataError("prediction covers " + std::to_string(scores.size()) +
                    " artifacts, evaluation set has " + std::to_string(view.size()));
  }
  std::vector<double> aligned(view.size());
  for (std::size_t i = 0; i < view.size(); ++i) {
    auto it = scores.find(view.ids[i]);
    if (it == scores.end()) {
      throw DataError("prediction has no score for artifact \"" + view.ids[i] + "\"");
    }
    if (!(it->second >= 0.0 && it->second <= 1.0)) {
      throw DataError("score for \"" + view.ids[i] + "\" outside [0, 1]");
    }
    aligned[i] = it->second;
  }
  return Prediction(std::move(aligned), threshold);
}

ConfusionCounts confusion_counts(const EvaluationView& view, const Prediction& pred) {
  if (pred.size() != view.size()) {
    throw DataError("prediction size does not match the evaluation set");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < view.size(); ++i) {
    const bool actual = view.defective[i] != 0;
    const bool predicted = pred.label(i);
    if (actual && predicted) ++c.tp;
    else if (actual) ++c.fn;
    else if (predicted) ++c.fp;
    else ++c.tn;
  }
  return c;
}

MetricVector confusion_metrics(const ConfusionCounts& c) {
  const double tp = static_cast<double>(c.tp);
  const double fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn);
  const double fn = static_cast<double>(c.fn);
  const double n = tp + fp + tn + fn;

  MetricVector m;
  m.recall = safe_ratio(tp, tp + fn);
  m.precision = safe_ratio(tp, tp + fp);
  m.fpr = safe_ratio(fp, tn + fp);
  m.f_measure = safe_ratio(2.0 * m.recall * m.precision, m.recall + m.precision);
  m.g_measure = safe_ratio(2.0 * m.recall * (1.0 - m.fpr), m.recall + (1.0 - m.fpr));
  m.balance = 1.0 - std::sqrt((1.0 - m.recall) * (1.0 - m.recall) + m.fpr * m.fpr) /
                        std::sqrt(2.0);
  m.accuracy = safe_ratio(tp + tn, n);
  m.error = 1.0 - m.accuracy;  // (fp + fn) / n, kept exactly complementary
  m.error_type1 = safe_ratio(fp, tp + fn);
  m.error_type2 = safe_ratio(fn, tn + fp);
  m.mcc = safe_ratio(tp * tn - fp * fn, std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)));
  m.consistency = safe_ratio(tp * n - (tp + fn) * (tp + fn), (tp + fn) * (tn + fp));
  m.necm10 = safe_ratio(fp + 10.0 * fn, n);
  m.necm25 = safe_ratio(fp + 25.0 * fn, n);
  return m;
}

double auc(std::span<const std::uint8_t> truth, std::span<const double> scores) {
  if (truth.size() != scores.size()) throw std::invalid_argument("auc: length mismatch");
  const std::size_t n = truth.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double positive_rank_sum = 0.0;
  double positives = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double mid_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) {
      if (truth[order[t]]) {
        positive_rank_sum += mid_rank;
        positives += 1.0;
      }
    }
    i = j;
  }
  const double negatives = static_cast<double>(n) - positives;
  if (positives == 0.0 || negatives == 0.0) return kUndefined;
  const double u = positive_rank_sum - positives * (positives + 1.0) / 2.0;
  return u / (positives * negatives);
}

std::vector<std::size_t> inspection_order(const EvaluationView& view,
                                          std::span<const double> scores) {
  std::vector<std::size_t> order(view.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (view.sizes[a] != view.sizes[b]) return view.sizes[a] > view.sizes[b];
    return view.ids[a] < view.ids[b];
  });
  return order;
}

double auc_alberg(const EvaluationView& view, std::span<const double> scores) {
  const std::size_t defective = view.defective_count();
  if (defective == 0 || view.size() == 0) return kUndefined;
  const auto order = inspection_order(view, scores);
  const double step = 1.0 / static_cast<double>(view.size());
  double area = 0.0;
  double prev = 0.0;
  std::size_t found = 0;
  for (std::size_t pos : order) {
    found += view.defective[pos] ? 1 : 0;
    const double y = static_cast<double>(found) / static_cast<double>(defective);
    area += (prev + y) / 2.0 * step;
    prev = y;
  }
  return area;
}

double auc_recall_pf(std::span<const std::uint8_t> truth, std::span<const double> scores) {
  if (truth.size() != scores.size()) {
    throw std::invalid_argument("auc_recall_pf: length mismatch");
  }
  const std::size_t n = truth.size();
  const auto positives = static_cast<double>(std::count(truth.begin(), truth.end(), 1));
  const double negatives = static_cast<double>(n) - positives;
  if (positives == 0.0 || negatives == 0.0) return kUndefined;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  // Positive part of (recall - pf) integrated over pf along the ROC polygon.
  auto segment = [](double x0, double y0, double x1, double y1) {
    const double w = x1 - x0;
    if (w <= 0.0) return 0.0;
    const double g0 = y0 - x0;
    const double g1 = y1 - x1;
    if (g0 >= 0.0 && g1 >= 0.0) return w * (g0 + g1) / 2.0;
    if (g0 <= 0.0 && g1 <= 0.0) return 0.0;
    const double g = std::max(g0, g1);
    return w * g / std::abs(g1 - g0) * g / 2.0;
  };

  double area = 0.0;
  double x = 0.0, y = 0.0;
  double tp = 0.0, fp = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) {
      if (truth[order[j]]) tp += 1.0;
      else fp += 1.0;
      ++j;
    }
    const double nx = fp / negatives;
    const double ny = tp / positives;
    area += segment(x, y, nx, ny);
    x = nx;
    y = ny;
    i = j;
  }
  return area / 0.5;
}

EffortMetrics effort_metrics(const EvaluationView& view, const Prediction& pred,
                             InspectionMode mode) {
  if (pred.size() != view.size()) {
    throw DataError("prediction size does not match the evaluation set");
  }
  EffortMetrics e;
  std::int64_t cost = 0;
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (pred.label(i)) cost += view.sizes[i];
  }
  e.cost = static_cast<double>(cost);

  const auto order = inspection_order(view, pred.scores());
  // Defects containing each position, for completion tracking.
  std::vector<std::vector<std::size_t>> member_of(view.size());
  for (std::size_t d = 0; d < view.defects.size(); ++d) {
    for (std::size_t p : view.defects[d]) member_of[p].push_back(d);
  }

  // Walks the ranking and returns the running found-count after each step.
  auto walk = [&](auto&& on_step) {
    std::vector<std::size_t> remaining(view.defects.size());
    for (std::size_t d = 0; d < view.defects.size(); ++d) {
      remaining[d] = view.defects[d].size();
    }
    std::size_t found = 0;
    for (std::size_t step = 0; step < order.size(); ++step) {
      const std::size_t p = order[step];
      if (mode == InspectionMode::defect_complete) {
        for (std::size_t d : member_of[p]) {
          if (--remaining[d] == 0) ++found;
        }
      } else if (view.defective[p]) {
        ++found;
      }
      if (!on_step(step, p, found)) return;
    }
  };

  // 20% budget: cumulative size must stay <= total / 5.
  const std::int64_t total = view.total_size();
  std::int64_t inspected = 0;
  std::size_t found_in_budget = 0;
  walk([&](std::size_t, std::size_t p, std::size_t found) {
    if ((inspected + view.sizes[p]) * 5 > total) return false;
    inspected += view.sizes[p];
    found_in_budget = found;
    return true;
  });
  e.nofb20 = static_cast<double>(found_in_budget);

  const std::size_t universe = mode == InspectionMode::defect_complete
                                   ? view.defects.size()
                                   : view.defective_count();
  const std::size_t needed = (8 * universe + 9) / 10;  // ceil(0.8 * universe)
  if (needed == 0) {
    e.nofc80 = 0.0;
  } else {
    e.nofc80 = kUndefined;
    walk([&](std::size_t step, std::size_t, std::size_t found) {
      if (found >= needed) {
        e.nofc80 = static_cast<double>(step + 1);
        return false;
      }
      return true;
    });
  }
  return e;
}

MetricVector evaluate_metrics(const EvaluationView& view, const Prediction& pred,
                              InspectionMode mode) {
  MetricVector m = confusion_metrics(confusion_counts(view, pred));
  m.auc = auc(view.defective, pred.scores());
  m.auc_alberg = auc_alberg(view, pred.scores());
  m.auc_recall_pf = auc_recall_pf(view.defective, pred.scores());
  const EffortMetrics e = effort_metrics(view, pred, mode);
  m.cost = e.cost;
  m.nofb20 = e.nofb20;
  m.nofc80 = e.nofc80;
  return m;
}

}  // namespace costbound
