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

#include "costbound/analysis.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <nlohmann/json.hpp>

#include "costbound/common.h"
#include "costbound/learners/spearman.h"

namespace costbound {

Matrix variable_matrix(const std::vector<EvaluationRecord>& records) {
  Matrix x(records.size(), kVariableCount);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto v = variable_values(records[i]);
    std::copy(v.begin(), v.end(), x.row(i).begin());
  }
  return x;
}

std::vector<int> potential_levels(const std::vector<EvaluationRecord>& records) {
  std::vector<int> y(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) y[i] = static_cast<int>(records[i].potential);
  return y;
}

std::vector<int> potential_levels(const std::vector<EvaluationRecord>& records,
                                  const Boundaries& boundaries) {
  std::vector<int> y(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    y[i] = static_cast<int>(classify_potential(records[i].bounds.diff, boundaries));
  }
  return y;
}

namespace {

double median_sorted(const std::vector<double>& v) {
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

Imputation Imputation::fit(const Matrix& x) {
  Imputation imp;
  imp.medians.assign(x.cols(), 0.0);
  imp.missing.assign(x.cols(), 0);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    std::vector<double> finite;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      if (std::isfinite(x(i, j))) {
        finite.push_back(x(i, j));
      } else {
        ++imp.missing[j];
      }
    }
    if (!finite.empty()) {
      std::sort(finite.begin(), finite.end());
      imp.medians[j] = median_sorted(finite);
    }
  }
  return imp;
}

Matrix Imputation::apply(const Matrix& x) const {
  if (x.cols() != medians.size()) throw std::invalid_argument("imputation: column count mismatch");
  Matrix out = x;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      if (!std::isfinite(out(i, j))) out(i, j) = medians[j];
    }
  }
  return out;
}

nlohmann::json Imputation::to_json(const std::vector<std::string>& names) const {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t k = 0; k < medians.size(); ++k) {
    const std::string n = k < names.size() ? names[k] : "x" + std::to_string(k);
    j[n] = {{"median", medians[k]}, {"imputed", missing[k]}};
  }
  return j;
}

std::string_view to_string(RelationshipKind kind) {
  switch (kind) {
    case RelationshipKind::logit: return "logit";
    case RelationshipKind::tree: return "tree";
    case RelationshipKind::forest: return "forest";
  }
  return "forest";
}

std::vector<int> RelationshipModels::predict(RelationshipKind kind, const Matrix& x) const {
  const Matrix z = imputation.apply(x);
  std::vector<int> out(z.rows());
  for (std::size_t i = 0; i < z.rows(); ++i) {
    switch (kind) {
      case RelationshipKind::logit:
        if (!has_logit) throw std::logic_error("relationship logit model was not fitted");
        out[i] = logit.predict(z.row(i));
        break;
      case RelationshipKind::tree: out[i] = tree.predict_class(z.row(i)); break;
      case RelationshipKind::forest: out[i] = forest.predict_class(z.row(i)); break;
    }
  }
  return out;
}

std::vector<int> RelationshipModels::predict(RelationshipKind kind,
                                             const std::vector<EvaluationRecord>& records) const {
  return predict(kind, variable_matrix(records));
}

namespace {

double oob_accuracy(const RandomForest& f, std::span<const int> y) {
  const auto oob = f.oob_classes();
  double hit = 0.0, n = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (oob[i] < 0) continue;
    n += 1.0;
    hit += oob[i] == y[i] ? 1.0 : 0.0;
  }
  return n > 0.0 ? hit / n : 0.0;
}

}  // namespace

RelationshipModels fit_relationship_models(const Matrix& x, std::span<const int> levels,
                                           std::vector<std::string> names,
                                           const RelationshipOptions& options) {
  if (x.rows() != levels.size()) throw std::invalid_argument("relationship: label count mismatch");
  const std::set<int> present(levels.begin(), levels.end());
  if (present.size() < 2) {
    throw DataError("relationship models need at least two potential levels, found " +
                    std::to_string(present.size()));
  }
  RelationshipModels m;
  m.variables = std::move(names);
  m.imputation = Imputation::fit(x);
  const Matrix z = m.imputation.apply(x);

  if (options.fit_logit) {
    m.logit = fit_multinomial_logit_elastic_net(z, levels, options.logit);
    m.has_logit = true;
  }

  TreeParams tp;
  tp.max_depth = options.tree_depth;
  m.tree = DecisionTree::fit_classifier(z, levels, kPotentialLevels, tp, {},
                                        derive_seed(options.seed, 1));
  m.tree_importance = gini_importance(m.tree);

  ForestParams fp = options.forest;
  if (options.tune_forest) {
    const std::vector<SearchDimension> box = {{0.01, 1.0, false}, {2, 20, true}, {1, 20, true}};
    const std::uint64_t eval_seed = derive_seed(options.seed, 2);
    auto objective = [&](std::span<const double> v) {
      ForestParams p = options.forest;
      p.feature_ratio = v[0];
      p.min_split = static_cast<std::size_t>(v[1]);
      p.min_leaf = static_cast<std::size_t>(v[2]);
      p.n_trees = options.tuning_trees;
      return -oob_accuracy(RandomForest::fit_classifier(z, levels, kPotentialLevels, p, eval_seed,
                                                        options.jobs),
                           levels);
    };
    DeOptions de = options.de;
    de.seed = derive_seed(options.seed, 3);
    de.initial.insert(de.initial.begin(),
                      {fp.feature_ratio, static_cast<double>(fp.min_split),
                       static_cast<double>(fp.min_leaf)});
    const DeResult r = differential_evolution(objective, box, de);
    fp.feature_ratio = r.best[0];
    fp.min_split = static_cast<std::size_t>(r.best[1]);
    fp.min_leaf = static_cast<std::size_t>(r.best[2]);
  }
  m.forest = RandomForest::fit_classifier(z, levels, kPotentialLevels, fp,
                                          derive_seed(options.seed, 4), options.jobs);
  m.forest_importance = gini_importance(m.forest);
  return m;
}

RelationshipModels fit_relationship_models(const std::vector<EvaluationRecord>& records,
                                           const RelationshipOptions& options) {
  return fit_relationship_models(variable_matrix(records), potential_levels(records),
                                 variable_names(), options);
}

std::int64_t PotentialConfusion::total() const {
  std::int64_t t = 0;
  for (const auto& row : counts) {
    for (auto v : row) t += v;
  }
  return t;
}

std::int64_t PotentialConfusion::column_total(std::size_t truth) const {
  std::int64_t t = 0;
  for (const auto& row : counts) t += row[truth];
  return t;
}

std::string_view to_string(Strength s) {
  switch (s) {
    case Strength::none: return "none";
    case Strength::classification: return "classification";
    case Strength::weak_categorization: return "weak_categorization";
    case Strength::strong_categorization: return "strong_categorization";
  }
  return "none";
}

PotentialConfusion confusion_matrix(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw std::invalid_argument("confusion: size mismatch");
  PotentialConfusion m;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int p = predicted[i];
    const int t = truth[i];
    if (p < 0 || t < 0 || p >= static_cast<int>(kPotentialLevels) ||
        t >= static_cast<int>(kPotentialLevels)) {
      throw std::invalid_argument("confusion: level out of range");
    }
    ++m.counts[static_cast<std::size_t>(p)][static_cast<std::size_t>(t)];
  }
  return m;
}

std::array<ClassSummary, kPotentialLevels> summarize_classes(const PotentialConfusion& m) {
  std::array<ClassSummary, kPotentialLevels> out;
  for (std::size_t c = 0; c < kPotentialLevels; ++c) {
    ClassSummary& s = out[c];
    s.support = m.column_total(c);
    if (s.support == 0) continue;
    const double n = static_cast<double>(s.support);
    double over = 0.0, under = 0.0;
    for (std::size_t p = 0; p < kPotentialLevels; ++p) {
      if (p > c) over += static_cast<double>(m.counts[p][c]);
      if (p < c) under += static_cast<double>(m.counts[p][c]);
    }
    s.correct = static_cast<double>(m.counts[c][c]) / n;
    s.over_total = over / n;
    s.under_total = under / n;
    s.over_moderate = c + 1 < kPotentialLevels ? static_cast<double>(m.counts[c + 1][c]) / n : 0.0;
    s.under_moderate = c > 0 ? static_cast<double>(m.counts[c - 1][c]) / n : 0.0;
  }
  return out;
}

StrengthVerdict classify_strength(const PotentialConfusion& m) {
  constexpr double kRule = 0.9;
  StrengthVerdict v;
  const auto none = static_cast<std::size_t>(PotentialLevel::none);

  const std::int64_t none_total = m.column_total(none);
  if (none_total > 0) {
    v.none_correct = static_cast<double>(m.counts[none][none]) / static_cast<double>(none_total);
  }
  std::int64_t saving_total = 0, saving_hit = 0;
  for (std::size_t c = 1; c < kPotentialLevels; ++c) {
    saving_total += m.column_total(c);
    saving_hit += m.column_total(c) - m.counts[none][c];
  }
  if (saving_total > 0) {
    v.saving_detected = static_cast<double>(saving_hit) / static_cast<double>(saving_total);
  }
  for (std::size_t c = 0; c < kPotentialLevels; ++c) {
    const std::int64_t n = m.column_total(c);
    if (n == 0) continue;
    const double correct = static_cast<double>(m.counts[c][c]) / static_cast<double>(n);
    v.level_correct_min = is_undefined(v.level_correct_min) ? correct : std::min(v.level_correct_min, correct);
    if (c == none) continue;
    std::int64_t near = m.counts[c][c];
    if (c > 1) near += m.counts[c - 1][c];
    if (c + 1 < kPotentialLevels) near += m.counts[c + 1][c];
    const double share = static_cast<double>(near) / static_cast<double>(n);
    v.neighbor_min = is_undefined(v.neighbor_min) ? share : std::min(v.neighbor_min, share);
  }

  auto passes = [&](double share) { return is_undefined(share) || share >= kRule; };
  if (m.total() == 0) return v;
  const bool classification = passes(v.none_correct) && passes(v.saving_detected);
  const bool weak = classification && passes(v.neighbor_min);
  const bool strong = passes(v.level_correct_min);
  if (strong) {
    v.verdict = Strength::strong_categorization;
  } else if (weak) {
    v.verdict = Strength::weak_categorization;
  } else if (classification) {
    v.verdict = Strength::classification;
  }
  return v;
}

ConfusionEvaluation evaluate_confusion(std::span<const int> predicted, std::span<const int> truth) {
  ConfusionEvaluation e;
  e.matrix = confusion_matrix(predicted, truth);
  e.classes = summarize_classes(e.matrix);
  e.verdict = classify_strength(e.matrix);
  std::int64_t hit = 0;
  for (std::size_t c = 0; c < kPotentialLevels; ++c) hit += e.matrix.counts[c][c];
  e.accuracy = safe_ratio(static_cast<double>(hit), static_cast<double>(e.matrix.total()));
  return e;
}

ConfusionEvaluation evaluate_confusion(const RelationshipModels& models, RelationshipKind kind,
                                       const std::vector<EvaluationRecord>& records) {
  const auto predicted = models.predict(kind, records);
  return evaluate_confusion(predicted, potential_levels(records));
}

namespace {

nlohmann::json number(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : extended_to_json(v);
}

}  // namespace

nlohmann::json to_json(const ConfusionEvaluation& e) {
  nlohmann::json matrix = nlohmann::json::array();
  for (const auto& row : e.matrix.counts) matrix.push_back(row);
  nlohmann::json classes = nlohmann::json::object();
  for (std::size_t c = 0; c < kPotentialLevels; ++c) {
    const auto& s = e.classes[c];
    classes[std::string(kPotentialNames[c])] = {{"support", s.support},
                                                {"correct", number(s.correct)},
                                                {"over_moderate", number(s.over_moderate)},
                                                {"over_total", number(s.over_total)},
                                                {"under_moderate", number(s.under_moderate)},
                                                {"under_total", number(s.under_total)}};
  }
  return {{"levels", kPotentialNames},
          {"rows", "predicted"},
          {"columns", "true"},
          {"matrix", std::move(matrix)},
          {"total", e.matrix.total()},
          {"accuracy", number(e.accuracy)},
          {"classes", std::move(classes)},
          {"verdict",
           {{"strength", to_string(e.verdict.verdict)},
            {"none_correct", number(e.verdict.none_correct)},
            {"saving_detected", number(e.verdict.saving_detected)},
            {"neighbor_min", number(e.verdict.neighbor_min)},
            {"level_correct_min", number(e.verdict.level_correct_min)}}}};
}

CorrelationResult correlation_analysis(const Matrix& x, std::vector<std::string> names,
                                       double threshold) {
  if (x.rows() < 3) throw DataError("correlation analysis needs at least three records");
  const std::size_t d = x.cols();
  CorrelationResult r;
  r.names = std::move(names);
  r.rho = Matrix(d, d, kUndefined);
  std::vector<std::vector<double>> cols(d);
  for (std::size_t j = 0; j < d; ++j) cols[j] = x.column(j);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      const double rho = spearman(cols[a], cols[b]);
      r.rho(a, b) = rho;
      r.rho(b, a) = rho;
    }
  }
  std::vector<std::size_t> parent(d);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      if (std::abs(r.rho(a, b)) > threshold) {
        const std::size_t ra = find(a), rb = find(b);
        parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  std::vector<std::vector<std::size_t>> by_root(d);
  for (std::size_t v = 0; v < d; ++v) by_root[find(v)].push_back(v);
  for (auto& g : by_root) {
    if (!g.empty()) r.groups.push_back(std::move(g));
  }
  return r;
}

CorrelationResult correlation_analysis(const std::vector<EvaluationRecord>& records,
                                       double threshold) {
  return correlation_analysis(variable_matrix(records), variable_names(), threshold);
}

DistributionSummary distribution_export(std::span<const double> diffs, std::span<const int> levels,
                                        double bin_width, std::size_t max_qq_points) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("histogram bin width must be positive");
  DistributionSummary s;
  s.total = diffs.size();
  std::vector<double> lg;
  for (double v : diffs) {
    if (std::isnan(v)) {
      ++s.undefined;
    } else if (v == kInfinity) {
      ++s.positive_infinite;
    } else if (v == -kInfinity) {
      ++s.negative_infinite;
    } else if (v > 0.0) {
      ++s.positive;
      lg.push_back(std::log10(v));
    } else if (v < 0.0) {
      ++s.negative;
    } else {
      ++s.zero;
    }
  }
  for (int l : levels) ++s.levels.at(static_cast<std::size_t>(l));
  if (lg.empty()) return s;

  const double n = static_cast<double>(lg.size());
  s.lg_mean = std::accumulate(lg.begin(), lg.end(), 0.0) / n;
  if (lg.size() > 1) {
    double ss = 0.0;
    for (double v : lg) ss += (v - s.lg_mean) * (v - s.lg_mean);
    s.lg_sd = std::sqrt(ss / (n - 1.0));
  }

  std::sort(lg.begin(), lg.end());
  const double first = std::floor(lg.front() / bin_width);
  const double last = std::floor(lg.back() / bin_width);
  const auto bins = static_cast<std::size_t>(last - first) + 1;
  for (std::size_t b = 0; b < bins; ++b) {
    const double lo = (first + static_cast<double>(b)) * bin_width;
    s.histogram.push_back({lo, lo + bin_width, 0});
  }
  for (double v : lg) {
    auto b = static_cast<std::size_t>(std::floor(v / bin_width) - first);
    ++s.histogram[std::min(b, bins - 1)].count;
  }

  if (lg.size() > 1 && s.lg_sd > 0.0 && max_qq_points > 0) {
    const boost::math::normal_distribution<double> fitted(s.lg_mean, s.lg_sd);
    const std::size_t points = std::min(max_qq_points, lg.size());
    for (std::size_t k = 0; k < points; ++k) {
      const std::size_t i = points == lg.size()
                                ? k
                                : static_cast<std::size_t>(std::llround(
                                      static_cast<double>(k) * (n - 1.0) /
                                      static_cast<double>(points - 1)));
      const double p = (static_cast<double>(i) + 0.5) / n;
      s.qq.emplace_back(boost::math::quantile(fitted, p), lg[i]);
    }
  }
  return s;
}

std::vector<double> record_diffs(const std::vector<EvaluationRecord>& records) {
  std::vector<double> d(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) d[i] = records[i].bounds.diff;
  return d;
}

DistributionSummary distribution_export(const std::vector<EvaluationRecord>& records,
                                        double bin_width, std::size_t max_qq_points) {
  const auto diffs = record_diffs(records);
  const auto levels = potential_levels(records);
  return distribution_export(diffs, levels, bin_width, max_qq_points);
}

nlohmann::json to_json(const DistributionSummary& d) {
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& b : d.histogram) hist.push_back({{"lower", b.lower}, {"upper", b.upper}, {"count", b.count}});
  nlohmann::json qq = nlohmann::json::array();
  for (const auto& [t, v] : d.qq) qq.push_back({t, v});
  nlohmann::json levels = nlohmann::json::object();
  for (std::size_t c = 0; c < kPotentialLevels; ++c) levels[std::string(kPotentialNames[c])] = d.levels[c];
  return {{"total", d.total},
          {"counts",
           {{"positive", d.positive},
            {"zero", d.zero},
            {"negative", d.negative},
            {"positive_infinite", d.positive_infinite},
            {"negative_infinite", d.negative_infinite},
            {"undefined", d.undefined}}},
          {"levels", std::move(levels)},
          {"lg_diff", {{"mean", number(d.lg_mean)}, {"sd", number(d.lg_sd)}}},
          {"histogram", std::move(hist)},
          {"qq", std::move(qq)}};
}

std::array<BoundaryDensity, 2> boundary_density(std::span<const double> diffs,
                                                const Boundaries& boundaries) {
  boundaries.validate();
  std::array<std::size_t, kPotentialLevels> level_counts{};
  for (double v : diffs) ++level_counts[static_cast<std::size_t>(classify_potential(v, boundaries))];
  const std::array<double, 2> bs = {boundaries.medium_large, boundaries.large_extra};
  std::array<BoundaryDensity, 2> out;
  for (std::size_t k = 0; k < 2; ++k) {
    BoundaryDensity& d = out[k];
    d.boundary = bs[k];
    const std::size_t lower_level = k + 1;  // medium below 1000, large below 10000
    std::size_t below = 0, above = 0;
    for (double v : diffs) {
      if (!(v >= 0.9 * bs[k] && v <= 1.1 * bs[k])) continue;
      ++d.in_window;
      (v <= bs[k] ? below : above) += 1;
    }
    d.lower_level_share = safe_ratio(static_cast<double>(below), static_cast<double>(level_counts[lower_level]));
    d.upper_level_share = safe_ratio(static_cast<double>(above), static_cast<double>(level_counts[lower_level + 1]));
    d.dense = (!is_undefined(d.lower_level_share) && d.lower_level_share > 0.2) ||
              (!is_undefined(d.upper_level_share) && d.upper_level_share > 0.2);
  }
  return out;
}

std::vector<SensitivityShift> sensitivity_boundaries(const std::vector<EvaluationRecord>& records,
                                                     std::uint64_t seed, const Boundaries& base,
                                                     const std::vector<double>& factors,
                                                     const ForestParams& forest, std::size_t jobs) {
  base.validate();
  const Matrix raw = variable_matrix(records);
  const Imputation imp = Imputation::fit(raw);
  const Matrix z = imp.apply(raw);
  const auto diffs = record_diffs(records);
  std::vector<SensitivityShift> out;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    SensitivityShift s;
    s.factor = factors[k];
    s.boundaries = base.scaled(factors[k]);
    const auto levels = potential_levels(records, s.boundaries);
    for (int l : levels) ++s.levels[static_cast<std::size_t>(l)];
    s.density = boundary_density(diffs, s.boundaries);
    const std::set<int> present(levels.begin(), levels.end());
    if (present.size() >= 2) {
      const RandomForest f = RandomForest::fit_classifier(z, levels, kPotentialLevels, forest,
                                                          derive_seed(seed, k), jobs);
      const auto oob = f.oob_classes();
      std::vector<int> pred, truth;
      for (std::size_t i = 0; i < oob.size(); ++i) {
        if (oob[i] < 0) continue;
        pred.push_back(oob[i]);
        truth.push_back(levels[i]);
      }
      s.confusion = evaluate_confusion(pred, truth);
      s.fitted = true;
    }
    out.push_back(std::move(s));
  }
  return out;
}

double r_squared(std::span<const double> truth, std::span<const double> predicted) {
  if (truth.size() != predicted.size() || truth.empty()) return kUndefined;
  const double mean = std::accumulate(truth.begin(), truth.end(), 0.0) / static_cast<double>(truth.size());
  double ss_tot = 0.0, ss_res = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ss_tot += (truth[i] - mean) * (truth[i] - mean);
    ss_res += (truth[i] - predicted[i]) * (truth[i] - predicted[i]);
  }
  return ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : kUndefined;
}

RegressionResult sensitivity_regression(const std::vector<EvaluationRecord>& train,
                                        const std::vector<EvaluationRecord>& eval,
                                        std::uint64_t seed, std::size_t jobs) {
  auto positive = [](const std::vector<EvaluationRecord>& rs, Matrix& x, std::vector<double>& y) {
    for (const auto& r : rs) {
      const double d = r.bounds.diff;
      if (!(std::isfinite(d) && d > 0.0)) continue;
      x.append_row(variable_values(r));
      y.push_back(std::log10(d));
    }
  };
  Matrix xt, xe;
  std::vector<double> yt, ye;
  positive(train, xt, yt);
  positive(eval, xe, ye);
  if (yt.size() < 2 || ye.size() < 2) {
    throw DataError("diff regression needs at least two finite positive diffs on each side");
  }
  RegressionResult r;
  r.train_count = yt.size();
  r.eval_count = ye.size();
  const Imputation imp = Imputation::fit(xt);
  const Matrix zt = imp.apply(xt);
  const Matrix ze = imp.apply(xe);
  ForestParams p;
  p.feature_ratio = 1.0 / 3.0;
  const RandomForest f = RandomForest::fit_regressor(zt, yt, p, seed, jobs);
  std::vector<double> pt(zt.rows()), pe(ze.rows());
  for (std::size_t i = 0; i < zt.rows(); ++i) pt[i] = f.predict_value(zt.row(i));
  for (std::size_t i = 0; i < ze.rows(); ++i) pe[i] = f.predict_value(ze.row(i));
  r.r2_train = r_squared(yt, pt);
  r.r2_eval = r_squared(ye, pe);
  return r;
}

nlohmann::json to_json(const std::vector<SensitivityShift>& shifts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : shifts) {
    nlohmann::json density = nlohmann::json::array();
    for (const auto& d : s.density) {
      density.push_back({{"boundary", d.boundary},
                         {"in_window", d.in_window},
                         {"lower_level_share", number(d.lower_level_share)},
                         {"upper_level_share", number(d.upper_level_share)},
                         {"dense", d.dense}});
    }
    nlohmann::json levels = nlohmann::json::object();
    for (std::size_t c = 0; c < kPotentialLevels; ++c) levels[std::string(kPotentialNames[c])] = s.levels[c];
    arr.push_back({{"factor", s.factor},
                   {"boundaries", {s.boundaries.medium_large, s.boundaries.large_extra}},
                   {"levels", std::move(levels)},
                   {"density", std::move(density)},
                   {"fitted", s.fitted},
                   {"confusion", s.fitted ? to_json(s.confusion) : nlohmann::json()}});
  }
  return arr;
}

nlohmann::json to_json(const RegressionResult& r) {
  return {{"train_count", r.train_count},
          {"eval_count", r.eval_count},
          {"r2_train", number(r.r2_train)},
          {"r2_eval", number(r.r2_eval)}};
}

}  // namespace costbound
