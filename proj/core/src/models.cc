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

#include "costbound/models.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "costbound/common.h"
#include "costbound/learners/naive_bayes.h"
#include "costbound/learners/smote.h"
#include "costbound/metrics.h"

namespace costbound {

std::string_view to_string(OversampleMode mode) {
  switch (mode) {
    case OversampleMode::off: return "off";
    case OversampleMode::smote: return "smote";
    case OversampleMode::smote_tuned: return "smote_tuned";
  }
  return "off";
}

OversampleMode parse_oversample(std::string_view name) {
  if (name == "off") return OversampleMode::off;
  if (name == "smote") return OversampleMode::smote;
  if (name == "smote_tuned") return OversampleMode::smote_tuned;
  throw std::invalid_argument("unknown oversample mode: " + std::string(name));
}

namespace {

struct Prepared {
  Matrix x;
  std::vector<int> y;
  std::vector<std::uint8_t> synthetic;
};

Prepared prepare(const Matrix& x, std::span<const int> y, OversampleMode mode, std::size_t k,
                 double target, std::uint64_t seed) {
  if (mode == OversampleMode::off) {
    return {x, std::vector<int>(y.begin(), y.end()), std::vector<std::uint8_t>(y.size(), 0)};
  }
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] == 1 ? pos : neg).push_back(i);
  const bool pos_minor = pos.size() <= neg.size();
  const auto& minor = pos_minor ? pos : neg;
  const auto& major = pos_minor ? neg : pos;
  if (minor.size() < 2 || smote_deficit(minor.size(), major.size(), target) == 0) {
    return {x, std::vector<int>(y.begin(), y.end()), std::vector<std::uint8_t>(y.size(), 0)};
  }
  OversampledData o = smote_oversample(x.select_rows(minor), x.select_rows(major), k, target, seed);
  if (!pos_minor) {
    for (int& v : o.y) v = 1 - v;
  }
  return {std::move(o.x), std::move(o.y), std::move(o.synthetic)};
}

TrainingSummary summarize(std::span<const int> y) {
  TrainingSummary s;
  s.instances = y.size();
  s.defective = static_cast<std::size_t>(std::count(y.begin(), y.end(), 1));
  return s;
}

}  // namespace

double oob_mcc(const RandomForest& forest, std::span<const int> y,
               std::span<const std::uint8_t> mask) {
  const auto frac = forest.oob_vote_fraction(1);
  ConfusionCounts c;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if ((!mask.empty() && mask[i]) || is_undefined(frac[i])) continue;
    const bool pred = frac[i] > Prediction::kDefaultThreshold;
    if (y[i] == 1) {
      pred ? ++c.tp : ++c.fn;
    } else {
      pred ? ++c.fp : ++c.tn;
    }
  }
  const double mcc = confusion_metrics(c).mcc;
  return is_undefined(mcc) ? 0.0 : mcc;
}

double tuning_score(const Matrix& x, std::span<const int> y, const ForestParams& params,
                    std::size_t tuning_trees, OversampleMode oversample, std::size_t smote_k,
                    double smote_target, std::uint64_t seed) {
  const Prepared p = prepare(x, y, oversample, smote_k, smote_target, derive_seed(seed, 1));
  ForestParams fp = params;
  fp.n_trees = tuning_trees;
  fp.bootstrap = true;
  const RandomForest f = RandomForest::fit_classifier(p.x, p.y, 2, fp, derive_seed(seed, 2));
  return oob_mcc(f, p.y, p.synthetic);
}

TunedConfig tune_forest(const Matrix& x, std::span<const int> y,
                        const ForestModelOptions& options, std::uint64_t seed) {
  const bool tune_smote = options.oversample == OversampleMode::smote_tuned;
  std::vector<SearchDimension> box = {{0.01, 1.0, false}, {2, 20, true}, {1, 20, true}};
  std::vector<double> start = {options.params.feature_ratio,
                               static_cast<double>(options.params.min_split),
                               static_cast<double>(options.params.min_leaf)};
  if (tune_smote) {
    box.push_back({1, 10, true});
    box.push_back({0.3, 0.7, false});
    start.push_back(static_cast<double>(options.smote_k));
    start.push_back(options.smote_target);
  }
  auto decode = [&](std::span<const double> v) {
    TunedConfig c;
    c.params = options.params;
    c.params.feature_ratio = v[0];
    c.params.min_split = static_cast<std::size_t>(v[1]);
    c.params.min_leaf = static_cast<std::size_t>(v[2]);
    c.smote_k = tune_smote ? static_cast<std::size_t>(v[3]) : options.smote_k;
    c.smote_target = tune_smote ? v[4] : options.smote_target;
    return c;
  };
  const std::uint64_t eval_seed = derive_seed(seed, 11);
  auto objective = [&](std::span<const double> v) {
    const TunedConfig c = decode(v);
    return -tuning_score(x, y, c.params, options.tuning_trees, options.oversample, c.smote_k,
                         c.smote_target, eval_seed);
  };
  DeOptions de = options.de;
  de.seed = derive_seed(seed, 12);
  de.initial.insert(de.initial.begin(), start);
  const DeResult r = differential_evolution(objective, box, de);
  // The DE optimum is biased upward by selection, so it must also beat the
  // start configuration on fresh seeds to be kept.
  const TunedConfig found = decode(r.best);
  const TunedConfig initial = decode(start);
  double margin = 0.0;
  for (std::uint64_t k = 0; k < options.confirm_rounds; ++k) {
    const std::uint64_t s = derive_seed(seed, 13, k);
    margin += tuning_score(x, y, found.params, options.tuning_trees, options.oversample,
                           found.smote_k, found.smote_target, s) -
              tuning_score(x, y, initial.params, options.tuning_trees, options.oversample,
                           initial.smote_k, initial.smote_target, s);
  }
  const bool keep = options.confirm_rounds == 0 || margin > 0.0;
  TunedConfig best = keep ? found : initial;
  best.oob_mcc = keep ? -r.best_value : -objective(start);
  best.evaluations = r.evaluations;
  return best;
}

ForestModel::ForestModel(ForestModelOptions options) : options_(std::move(options)) {
  options_.params.validate();
}

std::string ForestModel::name() const {
  return options_.tune ? "tuned_forest" : "forest";
}

ModelOutput ForestModel::fit_predict(const Matrix& train_x, std::span<const int> train_y,
                                     const Matrix& test_x, std::uint64_t seed) const {
  TunedConfig cfg{options_.params, options_.smote_k, options_.smote_target, 0.0, 0};
  if (options_.tune) cfg = tune_forest(train_x, train_y, options_, derive_seed(seed, 1));
  const Prepared p = prepare(train_x, train_y, options_.oversample, cfg.smote_k,
                             cfg.smote_target, derive_seed(seed, 2));
  const bool single_class = std::all_of(p.y.begin(), p.y.end(), [&](int v) { return v == p.y.front(); });
  ModelOutput out;
  out.after = summarize(p.y);
  out.scores.resize(test_x.rows());
  if (p.y.empty() || single_class) {
    const double s = p.y.empty() ? 0.0 : static_cast<double>(p.y.front());
    std::fill(out.scores.begin(), out.scores.end(), s);
    return out;
  }
  const RandomForest f = RandomForest::fit_classifier(p.x, p.y, 2, cfg.params,
                                                      derive_seed(seed, 3), options_.jobs);
  for (std::size_t i = 0; i < test_x.rows(); ++i) out.scores[i] = f.vote_fractions(test_x.row(i))[1];
  return out;
}

ModelOutput NaiveBayesModel::fit_predict(const Matrix& train_x, std::span<const int> train_y,
                                         const Matrix& test_x, std::uint64_t) const {
  const GaussianNaiveBayes nb = GaussianNaiveBayes::fit(train_x, train_y);
  ModelOutput out;
  out.after = summarize(train_y);
  out.scores.resize(test_x.rows());
  for (std::size_t i = 0; i < test_x.rows(); ++i) out.scores[i] = nb.probability(test_x.row(i));
  return out;
}

std::shared_ptr<const DefectModel> make_model(std::string_view name,
                                              const ForestModelOptions& forest) {
  if (name == "forest") return std::make_shared<ForestModel>(forest);
  if (name == "naive_bayes") return std::make_shared<NaiveBayesModel>();
  throw std::invalid_argument("unknown model: " + std::string(name));
}

}  // namespace costbound
