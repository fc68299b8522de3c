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

#include <algorithm>
#include <array>
#include <numeric>
#include <cmath>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "costbound/common.h"
#include "costbound/metrics.h"
#include "fixtures.h"

namespace costbound {
namespace {

using testing::t1_prediction;
using testing::t1_scores;
using testing::t1_view;

void expect_same(double actual, double expected, const std::string& what) {
  if (std::isnan(expected)) {
    EXPECT_TRUE(std::isnan(actual)) << what << " = " << actual;
  } else {
    EXPECT_NEAR(actual, expected, 1e-12) << what;
  }
}

// Straight transcription of the metric definitions, computed in long double
// with explicit zero-denominator checks.
std::array<double, 14> oracle(long double tp, long double fp, long double tn, long double fn) {
  const long double nan = std::numeric_limits<long double>::quiet_NaN();
  auto div = [&](long double a, long double b) { return b == 0 ? nan : a / b; };
  const long double n = tp + fp + tn + fn;
  const long double rec = div(tp, tp + fn);
  const long double prec = div(tp, tp + fp);
  const long double pf = div(fp, tn + fp);
  const long double f = (std::isnan(rec) || std::isnan(prec)) ? nan : div(2 * rec * prec, rec + prec);
  const long double g = (std::isnan(rec) || std::isnan(pf)) ? nan : div(2 * rec * (1 - pf), rec + 1 - pf);
  const long double bal = (std::isnan(rec) || std::isnan(pf))
                              ? nan
                              : 1 - std::sqrt((1 - rec) * (1 - rec) + pf * pf) / std::sqrt(2.0L);
  const long double acc = div(tp + tn, n);
  const long double err = div(fp + fn, n);
  const long double e1 = div(fp, tp + fn);
  const long double e2 = div(fn, tn + fp);
  const long double mcc = div(tp * tn - fp * fn, std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)));
  const long double cons = div(tp * n - (tp + fn) * (tp + fn), (tp + fn) * (tn + fp));
  const long double n10 = div(fp + 10 * fn, n);
  const long double n25 = div(fp + 25 * fn, n);
  return {static_cast<double>(rec), static_cast<double>(prec), static_cast<double>(pf),
          static_cast<double>(f),   static_cast<double>(g),    static_cast<double>(bal),
          static_cast<double>(acc), static_cast<double>(err),  static_cast<double>(e1),
          static_cast<double>(e2),  static_cast<double>(mcc),  static_cast<double>(cons),
          static_cast<double>(n10), static_cast<double>(n25)};
}

constexpr std::array<const char*, 14> kConfusionNames = {
    "recall", "precision", "fpr",     "f_measure", "g_measure",   "balance", "accuracy",
    "error",  "error_type1", "error_type2", "mcc", "consistency", "necm10",  "necm25"};

std::array<double, 14> confusion_part(const MetricVector& m) {
  return {m.recall,   m.precision, m.fpr,         m.f_measure,   m.g_measure,
          m.balance,  m.accuracy,  m.error,       m.error_type1, m.error_type2,
          m.mcc,      m.consistency, m.necm10,    m.necm25};
}

TEST(ConfusionCounts, T1) {
  EXPECT_EQ(confusion_counts(t1_view(), t1_prediction()), (ConfusionCounts{2, 1, 2, 1}));
}

TEST(ConfusionCounts, TrivialModels) {
  const auto view = t1_view();
  EXPECT_EQ(confusion_counts(view, Prediction(std::vector<double>(6, 1.0))),
            (ConfusionCounts{3, 3, 0, 0}));
  EXPECT_EQ(confusion_counts(view, Prediction(std::vector<double>(6, 0.0))),
            (ConfusionCounts{0, 0, 3, 3}));
}

TEST(ConfusionCounts, RejectsCoverageMismatch) {
  EXPECT_THROW(confusion_counts(t1_view(), Prediction({0.1, 0.2})), DataError);
  std::map<std::string, double> partial = {{"a1", 0.5}};
  EXPECT_THROW(Prediction::from_map(t1_view(), partial), DataError);
}

TEST(Prediction, ThresholdIsStrict) {
  const Prediction p({0.5, 0.50001, 0.0}, 0.5);
  EXPECT_FALSE(p.label(0));
  EXPECT_TRUE(p.label(1));
  EXPECT_FALSE(p.label(2));
}

TEST(ConfusionMetrics, T1) {
  const MetricVector m = confusion_metrics({2, 1, 2, 1});
  EXPECT_DOUBLE_EQ(m.recall, 2.0 / 3);
  EXPECT_DOUBLE_EQ(m.precision, 2.0 / 3);
  EXPECT_DOUBLE_EQ(m.fpr, 1.0 / 3);
  EXPECT_DOUBLE_EQ(m.accuracy, 2.0 / 3);
  EXPECT_DOUBLE_EQ(m.f_measure, 2.0 / 3);
  EXPECT_DOUBLE_EQ(m.g_measure, 2.0 / 3);
  EXPECT_DOUBLE_EQ(m.error, 1.0 / 3);
  EXPECT_DOUBLE_EQ(m.error_type1, 1.0 / 3);
  EXPECT_DOUBLE_EQ(m.error_type2, 1.0 / 3);
  EXPECT_DOUBLE_EQ(m.mcc, 1.0 / 3);
  EXPECT_DOUBLE_EQ(m.consistency, 1.0 / 3);
  EXPECT_DOUBLE_EQ(m.necm10, 11.0 / 6);
  EXPECT_DOUBLE_EQ(m.necm25, 26.0 / 6);
}

TEST(ConfusionMetrics, PerfectPrediction) {
  const MetricVector m = confusion_metrics({4, 0, 5, 0});
  EXPECT_EQ(m.recall, 1.0);
  EXPECT_EQ(m.precision, 1.0);
  EXPECT_EQ(m.accuracy, 1.0);
  EXPECT_EQ(m.fpr, 0.0);
  EXPECT_EQ(m.error, 0.0);
  EXPECT_EQ(m.mcc, 1.0);
}

TEST(ConfusionMetrics, DivisionByZeroIsUndefined) {
  const MetricVector m = confusion_metrics({0, 0, 4, 2});
  EXPECT_TRUE(is_undefined(m.precision));
  EXPECT_TRUE(is_undefined(m.f_measure));
  EXPECT_TRUE(is_undefined(m.mcc));
  EXPECT_EQ(m.recall, 0.0);
}

TEST(ConfusionMetrics, MatchesOracleOnAllSmallMatrices) {
  int cases = 0;
  for (int tp = 0; tp <= 5; ++tp) {
    for (int fp = 0; fp <= 5; ++fp) {
      for (int tn = 0; tn <= 5; ++tn) {
        for (int fn = 0; fn <= 5; ++fn) {
          const auto got = confusion_part(confusion_metrics({tp, fp, tn, fn}));
          const auto want = oracle(tp, fp, tn, fn);
          for (std::size_t k = 0; k < got.size(); ++k) {
            expect_same(got[k], want[k],
                        std::string(kConfusionNames[k]) + " at " + std::to_string(tp) + "," +
                            std::to_string(fp) + "," + std::to_string(tn) + "," + std::to_string(fn));
          }
          ++cases;
        }
      }
    }
  }
  EXPECT_EQ(cases, 1296);
}

TEST(ConfusionMetrics, Invariants) {
  for (int tp = 0; tp <= 5; ++tp) {
    for (int fp = 0; fp <= 5; ++fp) {
      for (int tn = 0; tn <= 5; ++tn) {
        for (int fn = 0; fn <= 5; ++fn) {
          const MetricVector m = confusion_metrics({tp, fp, tn, fn});
          if (!is_undefined(m.accuracy)) EXPECT_EQ(m.error, 1.0 - m.accuracy);
          if (!is_undefined(m.f_measure)) {
            EXPECT_GE(m.f_measure, std::min(m.recall, m.precision) - 1e-15);
            EXPECT_LE(m.f_measure, std::max(m.recall, m.precision) + 1e-15);
          }
          if (!is_undefined(m.g_measure)) {
            EXPECT_GE(m.g_measure, std::min(m.recall, 1 - m.fpr) - 1e-15);
            EXPECT_LE(m.g_measure, std::max(m.recall, 1 - m.fpr) + 1e-15);
          }
          const double swapped = confusion_metrics({tn, fn, tp, fp}).mcc;
          const double flipped = confusion_metrics({fn, tn, fp, tp}).mcc;
          if (is_undefined(m.mcc)) {
            EXPECT_TRUE(is_undefined(swapped));
            EXPECT_TRUE(is_undefined(flipped));
          } else {
            EXPECT_NEAR(swapped, m.mcc, 1e-15);
            EXPECT_NEAR(flipped, -m.mcc, 1e-15);
            EXPECT_GE(m.mcc, -1.0 - 1e-15);
            EXPECT_LE(m.mcc, 1.0 + 1e-15);
          }
        }
      }
    }
  }
}

double brute_force_auc(const std::vector<std::uint8_t>& truth, const std::vector<double>& s) {
  double wins = 0.0, pairs = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!truth[i] || truth[j]) continue;
      pairs += 1.0;
      wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return wins / pairs;
}

TEST(Auc, T1AndTrivialCases) {
  const std::vector<std::uint8_t> truth = {1, 0, 1, 0, 1, 0};
  EXPECT_DOUBLE_EQ(auc(truth, t1_scores()), 8.0 / 9);
  EXPECT_DOUBLE_EQ(auc(truth, std::vector<double>{0.9, 0.1, 0.8, 0.2, 0.7, 0.3}), 1.0);
  EXPECT_DOUBLE_EQ(auc(truth, std::vector<double>(6, 0.4)), 0.5);
  EXPECT_TRUE(is_undefined(auc(std::vector<std::uint8_t>(3, 1), std::vector<double>{0.1, 0.2, 0.3})));
}

TEST(Auc, MatchesPairwiseBruteForce) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng() % 29;
    std::vector<std::uint8_t> truth(n);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = rng() % 2;
      s[i] = static_cast<double>(rng() % 7) / 6.0;
    }
    truth[0] = 1;
    truth[1] = 0;
    const double a = auc(truth, s);
    EXPECT_NEAR(a, brute_force_auc(truth, s), 1e-12);
    std::vector<double> t(n);
    std::transform(s.begin(), s.end(), t.begin(), [](double v) { return 0.1 + 0.8 * v * v * v; });
    EXPECT_NEAR(auc(truth, t), a, 1e-12);
  }
}

TEST(AucAlberg, T1MatchesCumulativeWalk) {
  // Ranking a1 a5 a2 a3 a6 a4: defective fractions 1/3 2/3 2/3 1 1 1.
  const double expected = ((0 + 1.0 / 3) + (1.0 / 3 + 2.0 / 3) + (2.0 / 3 + 2.0 / 3) +
                           (2.0 / 3 + 1) + 2 + 2) / 2 / 6;
  EXPECT_NEAR(auc_alberg(t1_view(), t1_scores()), expected, 1e-12);
  EXPECT_NEAR(expected, 25.0 / 36, 1e-12);
}

TEST(AucAlberg, BestAndWorstRankings) {
  const auto view = t1_view();
  const double best = auc_alberg(view, std::vector<double>{0.9, 0.1, 0.8, 0.2, 0.7, 0.3});
  const double worst = auc_alberg(view, std::vector<double>{0.1, 0.9, 0.2, 0.8, 0.3, 0.7});
  // Best: all three found after half of the artifacts.
  EXPECT_NEAR(best, (1.0 / 6 + 1.0 / 2 + 5.0 / 6 + 1 + 1 + 1) / 6, 1e-12);
  EXPECT_NEAR(worst, (0 + 0 + 0 + 1.0 / 6 + 1.0 / 2 + 5.0 / 6) / 6, 1e-12);
  std::vector<double> s = t1_scores();
  std::sort(s.begin(), s.end());
  do {
    const double a = auc_alberg(view, s);
    EXPECT_LE(a, best + 1e-12);
    EXPECT_GE(a, worst - 1e-12);
  } while (std::next_permutation(s.begin(), s.end()));
}

TEST(AucAlberg, UndefinedWithoutDefects) {
  const auto view = EvaluationView::create({"a", "b"}, {1, 2}, {});
  EXPECT_TRUE(is_undefined(auc_alberg(view, std::vector<double>{0.2, 0.4})));
}

// Integrates max(0, tpr - fpr) over the tie-grouped ROC polygon exactly by
// splitting each segment where it crosses the diagonal.
double roc_above_diagonal(const std::vector<std::uint8_t>& truth, const std::vector<double>& s) {
  std::vector<std::size_t> idx(s.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return s[a] > s[b]; });
  const double pos = static_cast<double>(std::count(truth.begin(), truth.end(), 1));
  const double neg = static_cast<double>(truth.size()) - pos;
  std::vector<std::pair<double, double>> pts = {{0, 0}};
  double tp = 0, fp = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    (truth[idx[k]] ? tp : fp) += 1;
    if (k + 1 == idx.size() || s[idx[k + 1]] != s[idx[k]]) pts.push_back({fp / neg, tp / pos});
  }
  double area = 0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    auto [x0, y0] = pts[k - 1];
    auto [x1, y1] = pts[k];
    const double d0 = y0 - x0, d1 = y1 - x1;
    const double w = x1 - x0;
    if (d0 >= 0 && d1 >= 0) {
      area += w * (d0 + d1) / 2;
    } else if (d0 > 0 || d1 > 0) {
      const double t = d0 / (d0 - d1);
      area += d0 > 0 ? w * t * d0 / 2 : w * (1 - t) * d1 / 2;
    }
  }
  return area / 0.5;
}

TEST(AucRecallPf, T1AndTrivialCases) {
  const std::vector<std::uint8_t> truth = {1, 0, 1, 0, 1, 0};
  EXPECT_NEAR(auc_recall_pf(truth, t1_scores()), 7.0 / 9, 1e-12);
  EXPECT_NEAR(auc_recall_pf(truth, std::vector<double>{0.9, 0.1, 0.8, 0.2, 0.7, 0.3}), 1.0, 1e-12);
  EXPECT_NEAR(auc_recall_pf(truth, std::vector<double>(6, 0.3)), 0.0, 1e-12);
  EXPECT_TRUE(is_undefined(auc_recall_pf(std::vector<std::uint8_t>(2, 0), std::vector<double>{0.1, 0.2})));
}

TEST(AucRecallPf, MatchesPolygonOracle) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng() % 20;
    std::vector<std::uint8_t> truth(n);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = rng() % 2;
      s[i] = static_cast<double>(rng() % 5) / 4.0;
    }
    truth[0] = 1;
    truth[1] = 0;
    EXPECT_NEAR(auc_recall_pf(truth, s), roc_above_diagonal(truth, s), 1e-12);
  }
}

TEST(EffortMetrics, T1) {
  const EffortMetrics e = effort_metrics(t1_view(), t1_prediction());
  EXPECT_EQ(e.cost, 190.0);
  EXPECT_EQ(e.nofb20, 1.0);
  EXPECT_EQ(e.nofc80, 4.0);
}

TEST(EffortMetrics, FileCountingMode) {
  const EffortMetrics e = effort_metrics(t1_view(), t1_prediction(), InspectionMode::defective_files);
  EXPECT_EQ(e.nofb20, 2.0);  // a1 and a5 inspected within 200 LLOC
  EXPECT_EQ(e.nofc80, 4.0);  // third defective file a3 is fourth in line
}

TEST(EffortMetrics, TiesBreakBySizeThenId) {
  const auto view = EvaluationView::create({"b", "a", "c"}, {10, 10, 30}, {{"d", {"a"}}});
  const auto order = inspection_order(view, std::vector<double>{0.5, 0.5, 0.5});
  EXPECT_EQ(order, (std::vector<std::size_t>{2, 1, 0}));
}

TEST(EffortMetrics, BoundsHoldOnRandomViews) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<std::string> ids;
    std::vector<std::int64_t> sizes;
    for (std::size_t i = 0; i < n; ++i) {
      ids.push_back("f" + std::to_string(i));
      sizes.push_back(static_cast<std::int64_t>(rng() % 100));
    }
    std::vector<std::pair<std::string, std::vector<std::string>>> defects;
    const std::size_t nd = rng() % 4;
    for (std::size_t d = 0; d < nd; ++d) {
      const std::size_t a = rng() % n, b = rng() % n;
      std::vector<std::string> members = {ids[a]};
      if (b != a) members.push_back(ids[b]);
      defects.push_back({"d" + std::to_string(d), members});
    }
    const auto view = EvaluationView::create(ids, sizes, defects);
    std::vector<double> s(n);
    for (double& v : s) v = static_cast<double>(rng() % 1000) / 999.0;
    const EffortMetrics e = effort_metrics(view, Prediction(s));
    EXPECT_LE(e.nofb20, static_cast<double>(view.defects.size()));
    EXPECT_FALSE(is_undefined(e.nofc80));
    EXPECT_LE(e.nofc80, static_cast<double>(n));
  }
}

TEST(MetricVector, JsonUsesNullForUndefined) {
  const MetricVector m = evaluate_metrics(t1_view(), t1_prediction());
  nlohmann::json j = m;
  EXPECT_EQ(j.size(), MetricVector::kCount);
  EXPECT_DOUBLE_EQ(j.at("cost").get<double>(), 190.0);
  MetricVector undefined = confusion_metrics({0, 0, 3, 3});
  nlohmann::json u = undefined;
  EXPECT_TRUE(u.at("precision").is_null());
  const MetricVector back = u.get<MetricVector>();
  EXPECT_TRUE(is_undefined(back.precision));
  EXPECT_EQ(back.recall, 0.0);
}

TEST(EvaluateMetrics, CombinesAllTwentyForT1) {
  const MetricVector m = evaluate_metrics(t1_view(), t1_prediction());
  EXPECT_DOUBLE_EQ(m.auc, 8.0 / 9);
  EXPECT_EQ(m.cost, 190.0);
  EXPECT_EQ(m.nofb20, 1.0);
  EXPECT_EQ(m.nofc80, 4.0);
  EXPECT_DOUBLE_EQ(m.mcc, 1.0 / 3);
}

}  // namespace
}  // namespace costbound
