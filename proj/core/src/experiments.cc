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

#include "costbound/experiments.h"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "costbound/common.h"

namespace costbound {

Matrix feature_matrix(const Release& release, std::span<const std::size_t> positions) {
  Matrix m(positions.size(), release.feature_count());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto& f = release.artifacts()[positions[i]].features;
    std::copy(f.begin(), f.end(), m.row(i).begin());
  }
  return m;
}

Matrix feature_matrix(const Release& release) {
  std::vector<std::size_t> all(release.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return feature_matrix(release, all);
}

std::vector<int> defect_labels(const Release& release, std::span<const std::size_t> positions) {
  std::vector<int> y(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) y[i] = release.is_defective(positions[i]) ? 1 : 0;
  return y;
}

namespace {

TrainingSummary summarize(std::span<const int> y) {
  return {y.size(), static_cast<std::size_t>(std::count(y.begin(), y.end(), 1))};
}

std::vector<std::size_t> all_positions(const Release& r) {
  std::vector<std::size_t> p(r.size());
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

// Positions sorted by (project, released_at, release id).
std::vector<std::size_t> chronological(const std::vector<Release>& releases) {
  std::vector<std::size_t> order(releases.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Release& x = releases[a];
    const Release& y = releases[b];
    if (x.project() != y.project()) return x.project() < y.project();
    if (x.released_at() != y.released_at()) return x.released_at() < y.released_at();
    return x.release_id() < y.release_id();
  });
  return order;
}

bool earlier(const Release& a, const Release& b) {
  if (a.released_at() != b.released_at()) return a.released_at() < b.released_at();
  return a.release_id() < b.release_id();
}

std::string model_label(const ModelSpec& spec) {
  std::string name = spec.model->name();
  if (spec.transfer != TransferKind::none) name += "+" + std::string(to_string(spec.transfer));
  return name;
}

}  // namespace

ExperimentResult run_bootstrap(const std::vector<Release>& releases, std::size_t n_samples,
                               std::uint64_t seed, const ExperimentOptions& options) {
  options.boundaries.validate();
  struct Variant {
    const char* name;
    ForestModel model;
  };
  std::vector<Variant> variants;
  ForestModelOptions plain = options.forest;
  plain.oversample = OversampleMode::off;
  plain.jobs = 1;
  variants.push_back({"plain", ForestModel(plain)});
  if (options.oversample != OversampleMode::off) {
    ForestModelOptions over = plain;
    over.oversample = options.oversample;
    variants.push_back({"oversampled", ForestModel(over)});
  }

  struct Slot {
    std::vector<EvaluationRecord> records;
    std::string notice;
  };
  const std::size_t tasks = releases.size() * n_samples;
  std::vector<Slot> slots(tasks);
  parallel_for(tasks, options.jobs, [&](std::size_t task) {
    const Release& release = releases[task / n_samples];
    const std::size_t sample = task % n_samples;
    const std::uint64_t split_seed = derive_seed(seed, hash_string(release.label()), sample);
    SplitSample split;
    try {
      split = bootstrap_split(release, split_seed, options.max_redraws);
    } catch (const std::runtime_error& e) {
      slots[task].notice = e.what();
      return;
    }
    const Matrix train_x = feature_matrix(release, split.train);
    const std::vector<int> train_y = defect_labels(release, split.train);
    const Matrix test_x = feature_matrix(release, split.test);
    const EvaluationView test = EvaluationView::of(release, split.test);
    const TrainingSummary before = summarize(train_y);
    for (std::size_t v = 0; v < variants.size(); ++v) {
      const std::uint64_t fit_seed = derive_seed(split_seed, v);
      const ModelOutput out = variants[v].model.fit_predict(train_x, train_y, test_x, fit_seed);
      EvaluationRecord r;
      r.scenario = "bootstrap";
      r.project = release.project();
      r.release = release.release_id();
      r.train_source = "in_bag";
      r.variant = variants[v].name;
      r.model = variants[v].model.name();
      r.sample = static_cast<std::int64_t>(sample);
      r.seed = fit_seed;
      evaluate_record(r, test, Prediction(out.scores), before, out.after, options.boundaries);
      slots[task].records.push_back(std::move(r));
    }
  });

  ExperimentResult result;
  for (std::size_t t = 0; t < tasks; ++t) {
    if (!slots[t].notice.empty() && (t % n_samples == 0 || slots[t].notice != slots[t - 1].notice)) {
      result.notices.push_back(slots[t].notice);
    }
    for (auto& r : slots[t].records) result.records.push_back(std::move(r));
  }
  return result;
}

std::optional<std::size_t> cross_version_source(const std::vector<Release>& releases,
                                                std::size_t target,
                                                const EligibilityRule& rule) {
  const Release& t = releases.at(target);
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < releases.size(); ++i) {
    const Release& r = releases[i];
    if (i == target || r.project() != t.project() || !earlier(r, t)) continue;
    if (!is_eligible(r, rule)) continue;
    if (!best || earlier(releases[*best], r)) best = i;
  }
  return best;
}

std::vector<std::size_t> cross_project_pool(const std::vector<Release>& releases,
                                            std::size_t target, const EligibilityRule& rule,
                                            int window_days) {
  const Release& t = releases.at(target);
  const Timestamp latest = t.released_at() - std::chrono::days{window_days};
  std::vector<std::size_t> pool;
  for (std::size_t i : chronological(releases)) {
    const Release& r = releases[i];
    if (r.project() == t.project() || r.released_at() > latest) continue;
    if (is_eligible(r, rule)) pool.push_back(i);
  }
  return pool;
}

namespace {

struct Target {
  std::size_t index;
  std::vector<std::size_t> sources;
  std::string train_source;
};

ExperimentResult run_generalization(const std::vector<Release>& releases, const ModelSpec& spec,
                                    std::uint64_t seed, const ExperimentOptions& options,
                                    const std::string& scenario,
                                    const std::vector<Target>& targets) {
  if (!spec.model) throw std::invalid_argument(scenario + ": no model given");
  options.boundaries.validate();
  std::vector<std::optional<EvaluationRecord>> slots(targets.size());
  std::vector<std::string> notices(targets.size());
  parallel_for(targets.size(), options.jobs, [&](std::size_t k) {
    const Target& tg = targets[k];
    const Release& target = releases[tg.index];
    Matrix train_x;
    std::vector<int> train_y;
    for (std::size_t s : tg.sources) {
      const Release relabeled = releases[s].with_defects_fixed_before(target.released_at());
      if (relabeled.feature_count() != target.feature_count()) {
        notices[k] = target.label() + ": feature count differs from " + relabeled.label();
        return;
      }
      const auto pos = all_positions(relabeled);
      const Matrix x = feature_matrix(relabeled, pos);
      for (std::size_t i = 0; i < x.rows(); ++i) train_x.append_row(x.row(i));
      const auto y = defect_labels(relabeled, pos);
      train_y.insert(train_y.end(), y.begin(), y.end());
    }
    const TransferResult tr = transfer_transform(spec.transfer, train_x, feature_matrix(target));
    const std::uint64_t fit_seed = derive_seed(seed, hash_string(target.label()));
    const ModelOutput out = spec.model->fit_predict(tr.train, train_y, tr.target, fit_seed);
    EvaluationRecord r;
    r.scenario = scenario;
    r.project = target.project();
    r.release = target.release_id();
    r.train_source = tg.train_source;
    r.variant = "plain";
    r.model = model_label(spec);
    r.sample = 0;
    r.seed = fit_seed;
    evaluate_record(r, EvaluationView::of(target), Prediction(out.scores), summarize(train_y),
                    out.after, options.boundaries);
    slots[k] = std::move(r);
  });
  ExperimentResult result;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (!notices[k].empty()) result.notices.push_back(notices[k]);
    if (slots[k]) result.records.push_back(std::move(*slots[k]));
  }
  return result;
}

}  // namespace

ExperimentResult run_cross_version(const std::vector<Release>& releases, const ModelSpec& spec,
                                   std::uint64_t seed, const ExperimentOptions& options) {
  std::vector<Target> targets;
  std::vector<std::string> notices;
  for (std::size_t i : chronological(releases)) {
    const auto src = cross_version_source(releases, i, options.eligibility);
    if (!src) {
      notices.push_back(releases[i].label() + ": no eligible prior release");
      continue;
    }
    targets.push_back({i, {*src}, releases[*src].label()});
  }
  ExperimentResult r = run_generalization(releases, spec, seed, options, "cross_version", targets);
  notices.insert(notices.end(), r.notices.begin(), r.notices.end());
  r.notices = std::move(notices);
  return r;
}

ExperimentResult run_cross_project(const std::vector<Release>& releases, const ModelSpec& spec,
                                   std::uint64_t seed, const ExperimentOptions& options) {
  std::vector<Target> targets;
  std::vector<std::string> notices;
  for (std::size_t i : chronological(releases)) {
    auto pool = cross_project_pool(releases, i, options.eligibility, options.temporal_window_days);
    if (pool.empty()) {
      notices.push_back(releases[i].label() + ": empty cross-project pool");
      continue;
    }
    const std::string source = "pool:" + std::to_string(pool.size());
    targets.push_back({i, std::move(pool), source});
  }
  ExperimentResult r = run_generalization(releases, spec, seed, options, "cross_project", targets);
  notices.insert(notices.end(), r.notices.begin(), r.notices.end());
  r.notices = std::move(notices);
  return r;
}

}  // namespace costbound
