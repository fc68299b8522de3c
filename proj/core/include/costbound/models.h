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

#ifndef COSTBOUND_MODELS_H_
#define COSTBOUND_MODELS_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "costbound/confounders.h"
#include "costbound/learners/differential_evolution.h"
#include "costbound/learners/matrix.h"
#include "costbound/learners/random_forest.h"
#include "costbound/transfer.h"

namespace costbound {

struct ModelOutput {
  std::vector<double> scores;  // one per test row, in [0, 1]
  TrainingSummary after;       // training data after preprocessing
};

// A defect prediction model trained on labeled rows (1 = defective) and
// scored on test rows. Implementations must be deterministic per seed.
class DefectModel {
 public:
  virtual ~DefectModel() = default;
  virtual std::string name() const = 0;
  virtual ModelOutput fit_predict(const Matrix& train_x, std::span<const int> train_y,
                                  const Matrix& test_x, std::uint64_t seed) const = 0;
};

enum class OversampleMode { off, smote, smote_tuned };

std::string_view to_string(OversampleMode mode);
OversampleMode parse_oversample(std::string_view name);

struct ForestModelOptions {
  bool tune = true;
  OversampleMode oversample = OversampleMode::off;
  ForestParams params;  // final forest; tuned fields are overwritten
  std::size_t tuning_trees = 25;
  DeOptions de;  // seed is derived per fit
  // Fresh-seed re-evaluations the DE optimum must win against the start
  // configuration; 0 keeps the optimum unconditionally.
  std::size_t confirm_rounds = 3;
  std::size_t smote_k = 5;
  double smote_target = 0.5;
  std::size_t jobs = 1;
};

struct TunedConfig {
  ForestParams params;
  std::size_t smote_k = 5;
  double smote_target = 0.5;
  double oob_mcc = 0.0;  // tuning objective at the chosen point
  std::size_t evaluations = 0;  // DE objective calls
};

// OOB MCC of a binary forest on the rows where `mask` is zero; rows that
// were never out of bag are skipped. NaN is reported as 0.
double oob_mcc(const RandomForest& forest, std::span<const int> y,
               std::span<const std::uint8_t> mask = {});

// Tuning objective: OOB MCC of a `tuning_trees` forest after optional SMOTE.
double tuning_score(const Matrix& x, std::span<const int> y, const ForestParams& params,
                    std::size_t tuning_trees, OversampleMode oversample, std::size_t smote_k,
                    double smote_target, std::uint64_t seed);

// Differential evolution over feature_ratio, min_split and min_leaf (plus k
// and target ratio when oversampling is tuned). The untuned configuration
// is part of the initial population.
TunedConfig tune_forest(const Matrix& x, std::span<const int> y,
                        const ForestModelOptions& options, std::uint64_t seed);

class ForestModel : public DefectModel {
 public:
  explicit ForestModel(ForestModelOptions options = {});
  std::string name() const override;
  ModelOutput fit_predict(const Matrix& train_x, std::span<const int> train_y,
                          const Matrix& test_x, std::uint64_t seed) const override;
  const ForestModelOptions& options() const { return options_; }

 private:
  ForestModelOptions options_;
};

class NaiveBayesModel : public DefectModel {
 public:
  std::string name() const override { return "naive_bayes"; }
  ModelOutput fit_predict(const Matrix& train_x, std::span<const int> train_y,
                          const Matrix& test_x, std::uint64_t seed) const override;
};

struct ModelSpec {
  TransferKind transfer = TransferKind::none;
  std::shared_ptr<const DefectModel> model;
};

// "forest" or "naive_bayes".
std::shared_ptr<const DefectModel> make_model(std::string_view name,
                                              const ForestModelOptions& forest = {});

}  // namespace costbound

#endif  // COSTBOUND_MODELS_H_
