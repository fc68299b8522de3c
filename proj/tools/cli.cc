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

#include "cli.h"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "costbound/analysis.h"
#include "costbound/common.h"
#include "costbound/dataset.h"
#include "costbound/experiments.h"
#include "costbound/records.h"
#include "costbound/release_io.h"
#include "costbound/report.h"
#include "costbound/synthetic.h"

namespace costbound::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::optional<std::string> config, data, release, pred, records, eval, out;
  std::optional<std::string> transfer, oversample, model, boundaries, counting, log_level;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs, samples, projects, releases, min_artifacts, max_artifacts;
  std::optional<std::size_t> features, trees, tuning_trees, de_population, de_generations;
  std::optional<std::size_t> min_instances, min_defects, max_redraws;
  std::optional<double> threshold, signal;
  bool no_tune = false;
  bool no_logit = false;
  bool tune_forest = false;
  bool no_filter = false;
};

// Flags win over the config file, which wins over the defaults.
class Settings {
 public:
  Settings(const Flags& flags, json config) : flags_(flags), config_(std::move(config)) {}

  template <typename T>
  T get(const std::optional<T>& flag, const char* key, T fallback) const {
    if (flag) return *flag;
    if (auto it = config_.find(key); it != config_.end() && !it->is_null()) {
      try {
        return it->get<T>();
      } catch (const json::exception& e) {
        throw UsageError(std::string("config key '") + key + "': " + e.what());
      }
    }
    return fallback;
  }

  std::string require(const std::optional<std::string>& flag, const char* key) const {
    std::string v = get<std::string>(flag, key, "");
    if (v.empty()) throw UsageError(std::string("missing required option --") + key);
    return v;
  }

  Boundaries boundaries() const {
    Boundaries b;
    if (flags_.boundaries) {
      b = parse_boundaries(*flags_.boundaries);
    } else if (auto it = config_.find("boundaries"); it != config_.end()) {
      if (it->is_string()) {
        b = parse_boundaries(it->get<std::string>());
      } else if (it->is_array() && it->size() == 2) {
        b = {(*it)[0].get<double>(), (*it)[1].get<double>()};
      } else {
        throw UsageError("config key 'boundaries' must be \"b1,b2\" or [b1, b2]");
      }
    }
    try {
      b.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return b;
  }

  const json& config() const { return config_; }
  const Flags& flags() const { return flags_; }

 private:
  static Boundaries parse_boundaries(const std::string& text) {
    const auto parts = split_csv_line(text);
    if (parts.size() != 2) throw UsageError("--boundaries expects b1,b2");
    try {
      return {parse_double(parts[0]), parse_double(parts[1])};
    } catch (const std::exception&) {
      throw UsageError("--boundaries expects two numbers, got '" + text + "'");
    }
  }

  const Flags& flags_;
  json config_;
};

json load_config(const std::optional<std::string>& path) {
  if (!path) return json::object();
  std::ifstream in(*path);
  if (!in) throw UsageError("cannot open config file " + *path);
  try {
    json j = json::parse(in);
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw UsageError("config file " + *path + ": " + e.what());
  }
}

template <typename F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

EligibilityRule eligibility(const Settings& s) {
  EligibilityRule rule;
  rule.min_instances = s.get(s.flags().min_instances, "min_instances", rule.min_instances);
  rule.min_defects = s.get(s.flags().min_defects, "min_defects", rule.min_defects);
  const std::string counting = s.get<std::string>(s.flags().counting, "counting", "defective_files");
  if (counting == "defective_files") {
    rule.counting = DefectCounting::defective_files;
  } else if (counting == "defects") {
    rule.counting = DefectCounting::defects;
  } else {
    throw UsageError("--counting must be defective_files or defects");
  }
  if (rule.min_instances == 0 || rule.min_defects == 0) {
    throw UsageError("--min-instances and --min-defects must be positive");
  }
  return rule;
}

ForestModelOptions forest_options(const Settings& s) {
  ForestModelOptions o;
  const Flags& f = s.flags();
  o.tune = !(f.no_tune || !s.get<bool>(std::nullopt, "tune", true));
  o.params.n_trees = s.get(f.trees, "trees", o.params.n_trees);
  o.tuning_trees = s.get(f.tuning_trees, "tuning_trees", o.tuning_trees);
  o.de.population = s.get(f.de_population, "de_population", o.de.population);
  o.de.generations = s.get(f.de_generations, "de_generations", o.de.generations);
  if (o.params.n_trees == 0 || o.tuning_trees == 0) throw UsageError("tree counts must be positive");
  if (o.de.population < 4) throw UsageError("--de-population must be at least 4");
  return o;
}

std::vector<Release> load_data(const Settings& s) {
  const fs::path root = s.require(s.flags().data, "data");
  if (!fs::is_directory(root)) throw UsageError("--data is not a directory: " + root.string());
  auto releases = load_corpus(root);
  if (releases.empty()) throw DataError("no releases found under " + root.string());
  spdlog::info("loaded {} releases from {}", releases.size(), root.string());
  return releases;
}

fs::path output_dir(const Settings& s) {
  const fs::path out = s.require(s.flags().out, "out");
  fs::create_directories(out);
  return out;
}

void write_experiment(const fs::path& out, const ExperimentResult& r, json run) {
  write_records_csv(out / "records.csv", r.records);
  write_records_jsonl(out / "records.jsonl", r.records);
  run["records"] = r.records.size();
  run["notices"] = r.notices;
  write_json_file(out / "run.json", run);
  for (const auto& n : r.notices) spdlog::warn("{}", n);
  spdlog::info("wrote {} records to {}", r.records.size(), out.string());
}

int cmd_validate(const Settings& s) {
  const EligibilityRule rule = eligibility(s);
  const auto releases = load_data(s);
  json rows = json::array();
  std::size_t eligible = 0;
  for (const auto& r : releases) {
    const bool ok = is_eligible(r, rule);
    eligible += ok ? 1 : 0;
    rows.push_back({{"release", r.label()},
                    {"released_at", format_timestamp(r.released_at())},
                    {"artifacts", r.size()},
                    {"defective_files", r.defective_count()},
                    {"defects", r.defects().size()},
                    {"eligible", ok}});
  }
  json summary = {{"releases", releases.size()}, {"eligible", eligible}, {"details", rows}};
  if (s.flags().out || s.config().contains("out")) {
    const fs::path out = output_dir(s);
    write_json_file(out / "validation.json", summary);
  }
  std::cout << releases.size() << " releases valid, " << eligible << " eligible\n";
  return kOk;
}

std::map<std::string, double> load_predictions(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cannot open " + file.string());
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, double> scores;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    const std::string where = file.string() + ":" + std::to_string(line_no);
    if (line_no == 1 && f.size() == 2 && f[0] == "artifact_id") continue;
    if (f.size() != 2) throw DataError(where + ": expected artifact_id,score");
    double v = 0.0;
    try {
      v = parse_double(f[1]);
    } catch (const std::exception&) {
      throw DataError(where + ": invalid score '" + f[1] + "'");
    }
    if (!(v >= 0.0 && v <= 1.0)) throw DataError(where + ": score outside [0,1]");
    if (!scores.emplace(f[0], v).second) throw DataError(where + ": duplicate artifact id " + f[0]);
  }
  return scores;
}

int cmd_metrics(const Settings& s) {
  const Flags& f = s.flags();
  const Boundaries b = s.boundaries();
  const double threshold = s.get(f.threshold, "threshold", Prediction::kDefaultThreshold);
  const fs::path release_dir = s.require(f.release, "release");
  const fs::path pred_file = s.require(f.pred, "pred");
  const fs::path out = output_dir(s);

  const Release release = load_release_dir(release_dir);
  const EvaluationView view = EvaluationView::of(release);
  const Prediction pred = Prediction::from_map(view, load_predictions(pred_file), threshold);
  EvaluationRecord r;
  r.scenario = "external";
  r.project = release.project();
  r.release = release.release_id();
  r.train_source = "external";
  r.variant = "plain";
  r.model = "external";
  evaluate_record(r, view, pred, {}, {}, b);
  r.confounders.n_train = kUndefined;
  r.confounders.n_train_prime = kUndefined;
  write_records_csv(out / "records.csv", {r});
  write_records_jsonl(out / "records.jsonl", {r});
  spdlog::info("{}: diff {} potential {}", release.label(), format_double(r.bounds.diff),
               to_string(r.potential));
  return kOk;
}

struct Common {
  std::uint64_t seed;
  std::size_t jobs;
};

Common common(const Settings& s) {
  Common c{s.get<std::uint64_t>(s.flags().seed, "seed", 0),
           s.get<std::size_t>(s.flags().jobs, "jobs", 1)};
  if (c.jobs == 0) throw UsageError("--jobs must be positive");
  return c;
}

int cmd_bootstrap(const Settings& s) {
  const Flags& f = s.flags();
  const Common c = common(s);
  ExperimentOptions o;
  o.jobs = c.jobs;
  o.boundaries = s.boundaries();
  o.eligibility = eligibility(s);
  o.forest = forest_options(s);
  o.oversample = as_usage([&] {
    return parse_oversample(s.get<std::string>(f.oversample, "oversample", "smote_tuned"));
  });
  o.max_redraws = s.get(f.max_redraws, "max_redraws", o.max_redraws);
  const std::size_t samples = s.get<std::size_t>(f.samples, "samples", 100);
  if (samples == 0) throw UsageError("--samples must be positive");
  const bool filter = !(f.no_filter || !s.get<bool>(std::nullopt, "filter", true));
  const fs::path out = output_dir(s);

  auto releases = load_data(s);
  if (filter) {
    releases = filter_releases(releases, o.eligibility);
    spdlog::info("{} releases pass the eligibility filter", releases.size());
  }
  const ExperimentResult r = run_bootstrap(releases, samples, c.seed, o);
  write_experiment(out, r,
                   {{"scenario", "bootstrap"},
                    {"seed", c.seed},
                    {"samples", samples},
                    {"releases", releases.size()},
                    {"oversample", to_string(o.oversample)},
                    {"boundaries", {o.boundaries.medium_large, o.boundaries.large_extra}}});
  return kOk;
}

int cmd_generalization(const Settings& s, bool cross_project) {
  const Flags& f = s.flags();
  const Common c = common(s);
  ExperimentOptions o;
  o.jobs = c.jobs;
  o.boundaries = s.boundaries();
  o.eligibility = eligibility(s);
  ForestModelOptions fo = forest_options(s);
  fo.oversample = as_usage([&] {
    return parse_oversample(s.get<std::string>(f.oversample, "oversample", "off"));
  });
  ModelSpec spec;
  spec.transfer = as_usage([&] {
    return parse_transfer(s.get<std::string>(f.transfer, "transfer", "none"));
  });
  const std::string model =
      s.get<std::string>(f.model, "model", cross_project ? "naive_bayes" : "forest");
  spec.model = as_usage([&] { return make_model(model, fo); });
  const fs::path out = output_dir(s);

  const auto releases = load_data(s);
  const ExperimentResult r = cross_project ? run_cross_project(releases, spec, c.seed, o)
                                           : run_cross_version(releases, spec, c.seed, o);
  write_experiment(out, r,
                   {{"scenario", cross_project ? "cross_project" : "cross_version"},
                    {"seed", c.seed},
                    {"model", model},
                    {"transfer", to_string(spec.transfer)},
                    {"boundaries", {o.boundaries.medium_large, o.boundaries.large_extra}}});
  return kOk;
}

std::vector<EvaluationRecord> load_records_arg(const Settings& s, const std::optional<std::string>& flag,
                                               const char* key, bool required) {
  const std::string path = required ? s.require(flag, key) : s.get<std::string>(flag, key, "");
  if (path.empty()) return {};
  return read_records_csv(fs::path(path));
}

ReportOptions report_options(const Settings& s) {
  const Common c = common(s);
  ReportOptions o;
  o.seed = c.seed;
  o.jobs = c.jobs;
  o.boundaries = s.boundaries();
  o.relationship.fit_logit = !(s.flags().no_logit || !s.get<bool>(std::nullopt, "logit", true));
  o.relationship.tune_forest = s.flags().tune_forest || s.get<bool>(std::nullopt, "tune_forest", false);
  const std::size_t trees = s.get<std::size_t>(s.flags().trees, "trees", 100);
  if (trees == 0) throw UsageError("--trees must be positive");
  o.relationship.forest.n_trees = trees;
  o.sensitivity_forest.n_trees = trees;
  return o;
}

int cmd_analyze(const Settings& s) {
  const ReportOptions o = report_options(s);
  const fs::path out = output_dir(s);
  const auto train = load_records_arg(s, s.flags().records, "records", true);
  const auto eval = load_records_arg(s, s.flags().eval, "eval", false);
  const ReportSummary summary = write_report(out, train, eval, o);
  for (const auto& [model, v] : summary.train_verdicts) {
    spdlog::info("{} on training records: {}", model, to_string(v));
  }
  for (const auto& [model, v] : summary.eval_verdicts) {
    spdlog::info("{} on evaluation records: {}", model, to_string(v));
  }
  if (!summary.regression_skipped.empty()) {
    spdlog::warn("diff regression skipped: {}", summary.regression_skipped);
  }
  return kOk;
}

int cmd_sensitivity(const Settings& s) {
  const ReportOptions o = report_options(s);
  const fs::path out = output_dir(s);
  const auto train = load_records_arg(s, s.flags().records, "records", true);
  const auto eval = load_records_arg(s, s.flags().eval, "eval", false);
  const nlohmann::json j = sensitivity_report(train, eval, o);
  if (j.contains("regression_skipped")) {
    spdlog::warn("diff regression skipped: {}", j["regression_skipped"].get<std::string>());
  }
  write_json_file(out / "sensitivity.json", j);
  spdlog::info("wrote {}", (out / "sensitivity.json").string());
  return kOk;
}

int cmd_synth(const Settings& s) {
  const Flags& f = s.flags();
  SyntheticSpec spec;
  if (auto it = s.config().find("synthetic"); it != s.config().end()) {
    try {
      from_json(*it, spec);
    } catch (const std::exception& e) {
      throw UsageError(std::string("config key 'synthetic': ") + e.what());
    }
  }
  if (f.projects) spec.projects = *f.projects;
  if (f.releases) spec.releases_per_project = *f.releases;
  if (f.min_artifacts) spec.min_artifacts = *f.min_artifacts;
  if (f.max_artifacts) spec.max_artifacts = *f.max_artifacts;
  if (f.min_artifacts && !f.max_artifacts && spec.max_artifacts < spec.min_artifacts) {
    spec.max_artifacts = spec.min_artifacts;
  }
  if (f.features) spec.features = *f.features;
  if (f.signal) spec.signal = *f.signal;
  as_usage([&] {
    spec.validate();
    return 0;
  });
  const std::uint64_t seed = s.get<std::uint64_t>(f.seed, "seed", 0);
  const fs::path out = output_dir(s);
  const auto releases = generate_synthetic(spec, seed);
  write_corpus(releases, out);
  json meta = spec;
  meta["seed"] = seed;
  write_json_file(out / "synthetic.json", meta);
  spdlog::info("wrote {} synthetic releases to {}", releases.size(), out.string());
  return kOk;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags take precedence");
  cmd->add_option("--seed", f.seed, "Base random seed");
  cmd->add_option("-o,--out", f.out, "Output directory");
  cmd->add_option("--log-level", f.log_level, "trace, debug, info, warn, error or off");
}

void add_eligibility(CLI::App* cmd, Flags& f) {
  cmd->add_option("--min-instances", f.min_instances, "Minimum artifacts of an eligible release");
  cmd->add_option("--min-defects", f.min_defects, "Minimum defects of an eligible release");
  cmd->add_option("--counting", f.counting, "defective_files or defects");
}

void add_forest(CLI::App* cmd, Flags& f) {
  cmd->add_option("--trees", f.trees, "Trees of the final forest");
  cmd->add_option("--tuning-trees", f.tuning_trees, "Trees per tuning evaluation");
  cmd->add_option("--de-population", f.de_population, "Differential evolution population");
  cmd->add_option("--de-generations", f.de_generations, "Differential evolution generations");
  cmd->add_flag("--no-tune", f.no_tune, "Use the default forest parameters");
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Cost-aware evaluation of release-level defect prediction", "costbound"};
  app.require_subcommand(1);
  Flags f;

  auto* validate = app.add_subcommand("validate", "Load and check a corpus");
  add_common(validate, f);
  validate->add_option("--data", f.data, "Corpus root");
  add_eligibility(validate, f);

  auto* metrics = app.add_subcommand("metrics", "Evaluate external predictions for one release");
  add_common(metrics, f);
  metrics->add_option("--release", f.release, "Release directory");
  metrics->add_option("--pred", f.pred, "CSV with artifact_id,score");
  metrics->add_option("--threshold", f.threshold, "Classification threshold");
  metrics->add_option("--boundaries", f.boundaries, "Potential boundaries b1,b2");

  auto* bootstrap = app.add_subcommand("bootstrap", "Run the bootstrap experiment");
  add_common(bootstrap, f);
  bootstrap->add_option("--data", f.data, "Corpus root");
  bootstrap->add_option("--samples", f.samples, "Bootstrap samples per release");
  bootstrap->add_option("--jobs", f.jobs, "Worker threads");
  bootstrap->add_option("--boundaries", f.boundaries, "Potential boundaries b1,b2");
  bootstrap->add_option("--oversample", f.oversample, "off, smote or smote_tuned");
  bootstrap->add_option("--max-redraws", f.max_redraws, "Redraw budget per sample");
  bootstrap->add_flag("--no-filter", f.no_filter, "Skip the eligibility filter");
  add_eligibility(bootstrap, f);
  add_forest(bootstrap, f);

  CLI::App* generalization[2];
  const char* names[2] = {"cross-version", "cross-project"};
  const char* about[2] = {"Train on the prior eligible release of the same project",
                          "Train on older releases of other projects"};
  for (int k = 0; k < 2; ++k) {
    auto* cmd = app.add_subcommand(names[k], about[k]);
    add_common(cmd, f);
    cmd->add_option("--data", f.data, "Corpus root");
    cmd->add_option("--jobs", f.jobs, "Worker threads");
    cmd->add_option("--boundaries", f.boundaries, "Potential boundaries b1,b2");
    cmd->add_option("--transfer", f.transfer, "none, watanabe or camargo_cruz");
    cmd->add_option("--model", f.model, "forest or naive_bayes");
    cmd->add_option("--oversample", f.oversample, "off, smote or smote_tuned (forest only)");
    add_eligibility(cmd, f);
    add_forest(cmd, f);
    generalization[k] = cmd;
  }

  CLI::App* analysis[2];
  const char* anames[2] = {"analyze", "sensitivity"};
  const char* aabout[2] = {"Fit relationship models and write the report bundle",
                           "Boundary shifts and diff regression"};
  for (int k = 0; k < 2; ++k) {
    auto* cmd = app.add_subcommand(anames[k], aabout[k]);
    add_common(cmd, f);
    cmd->add_option("--records", f.records, "records.csv used for fitting");
    cmd->add_option("--eval", f.eval, "records.csv scored with the fitted models");
    cmd->add_option("--jobs", f.jobs, "Worker threads");
    cmd->add_option("--boundaries", f.boundaries, "Base potential boundaries b1,b2");
    cmd->add_option("--trees", f.trees, "Trees per forest");
    cmd->add_flag("--no-logit", f.no_logit, "Skip the multinomial logit model");
    cmd->add_flag("--tune-forest", f.tune_forest, "Tune the relationship forest");
    analysis[k] = cmd;
  }

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  add_common(synth, f);
  synth->add_option("--projects", f.projects, "Number of projects");
  synth->add_option("--releases", f.releases, "Releases per project");
  synth->add_option("--artifacts", f.min_artifacts, "Artifacts per release (minimum)");
  synth->add_option("--max-artifacts", f.max_artifacts, "Artifacts per release (maximum)");
  synth->add_option("--features", f.features, "Feature count");
  synth->add_option("--signal", f.signal, "Shift of defective features");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  auto logger = spdlog::stderr_color_mt("costbound");
  spdlog::set_default_logger(logger);
  struct Restore {
    ~Restore() { spdlog::drop("costbound"); }
  } restore;
  try {
    const Settings s(f, load_config(f.config));
    const std::string level = s.get<std::string>(f.log_level, "log_level", "info");
    const auto lvl = spdlog::level::from_str(level);
    if (lvl == spdlog::level::off && level != "off") throw UsageError("unknown log level " + level);
    spdlog::set_level(lvl);

    if (validate->parsed()) return cmd_validate(s);
    if (metrics->parsed()) return cmd_metrics(s);
    if (bootstrap->parsed()) return cmd_bootstrap(s);
    if (generalization[0]->parsed()) return cmd_generalization(s, false);
    if (generalization[1]->parsed()) return cmd_generalization(s, true);
    if (analysis[0]->parsed()) return cmd_analyze(s);
    if (analysis[1]->parsed()) return cmd_sensitivity(s);
    if (synth->parsed()) return cmd_synth(s);
    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    spdlog::error("usage: {}", e.what());
    return kUsage;
  } catch (const DataError& e) {
    spdlog::error("data: {}", e.what());
    return kData;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kRuntime;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace costbound::cli
