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

#ifndef COSTBOUND_TESTS_FIXTURES_H_
#define COSTBOUND_TESTS_FIXTURES_H_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include <unistd.h>

#include "costbound/metrics.h"
#include "costbound/models.h"
#include "costbound/release.h"
#include "costbound/timestamp.h"

namespace costbound::testing {

// Six artifacts a1..a6 with sizes 100, 50, 200, 10, 40, 600. Defect d1
// touches a1, defect d2 touches a3 and a5.
inline Release t1_release() {
  std::vector<Artifact> artifacts = {
      {"a1", 100, {1.0}}, {"a2", 50, {2.0}}, {"a3", 200, {3.0}},
      {"a4", 10, {4.0}},  {"a5", 40, {5.0}}, {"a6", 600, {6.0}},
  };
  std::vector<Defect> defects = {{"d1", {"a1"}, std::nullopt}, {"d2", {"a3", "a5"}, std::nullopt}};
  return Release::create("proj", "r1", parse_timestamp("2020-01-01"), std::move(artifacts),
                         std::move(defects), {"x"});
}

// Scores in artifact order; above 0.5 are a1, a2 and a5.
inline std::vector<double> t1_scores() { return {0.9, 0.7, 0.4, 0.1, 0.8, 0.3}; }

inline EvaluationView t1_view() { return EvaluationView::of(t1_release()); }
inline Prediction t1_prediction() { return Prediction(t1_scores()); }

// Three projects whose release dates put some pool candidates exactly 183
// days, 182 days and about five months before later targets. Features are
// {release day, fix day of the artifact's defect or -1, project index, noise},
// days counted from 2020-01-01. Every defective artifact has one defect.
struct LeakageRelease {
  int project;
  int day;
  int defects;
};

inline std::vector<LeakageRelease> leakage_layout() {
  return {{0, 0, 8},   {0, 200, 8},  {0, 400, 8},  {0, 700, 8},  {1, 17, 8},
          {1, 217, 8}, {1, 383, 1},  {1, 600, 8},  {2, 100, 8},  {2, 250, 8},
          {2, 550, 8}, {2, 582, 8},  {2, 583, 8},  {2, 850, 8}};
}

inline Timestamp leakage_day(int day) { return days_after(parse_timestamp("2020-01-01"), day); }

inline std::vector<Release> leakage_corpus() {
  std::vector<Release> out;
  int n = 0;
  for (const LeakageRelease& l : leakage_layout()) {
    std::vector<Artifact> artifacts;
    std::vector<Defect> defects;
    for (int i = 0; i < 40; ++i) {
      const int fix = l.day + 20 + 60 * i;
      const bool defective = i < l.defects;
      const std::string id = "f" + std::to_string(i);
      artifacts.push_back({id, 10 + i,
                           {static_cast<double>(l.day), defective ? static_cast<double>(fix) : -1.0,
                            static_cast<double>(l.project), static_cast<double>((i * 7 + n) % 11)}});
      if (defective) defects.push_back({"d" + std::to_string(i), {id}, leakage_day(fix)});
    }
    out.push_back(Release::create("P" + std::to_string(l.project + 1), "r" + std::to_string(n),
                                  leakage_day(l.day), std::move(artifacts), std::move(defects),
                                  {"day", "fix", "project", "noise"}));
    ++n;
  }
  return out;
}

// Records every training set it is handed; scores are the noise feature.
class SpyModel : public DefectModel {
 public:
  struct Call {
    Matrix train_x;
    std::vector<int> train_y;
    Matrix test_x;
  };

  std::string name() const override { return "spy"; }
  ModelOutput fit_predict(const Matrix& train_x, std::span<const int> train_y,
                          const Matrix& test_x, std::uint64_t) const override {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      calls_.push_back({train_x, {train_y.begin(), train_y.end()}, test_x});
    }
    ModelOutput out;
    const std::size_t last = test_x.cols() - 1;
    for (std::size_t i = 0; i < test_x.rows(); ++i) {
      out.scores.push_back(std::min(1.0, std::abs(test_x(i, last)) / 10.0));
    }
    out.after.instances = train_y.size();
    for (int y : train_y) out.after.defective += y == 1;
    return out;
  }
  std::vector<Call> calls() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return calls_;
  }

 private:
  mutable std::mutex mutex_;
  mutable std::vector<Call> calls_;
};

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("costbound-test-" + std::to_string(::getpid()) + "-" + std::to_string(stamp) + "-" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& file, const std::string& text) {
  std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace costbound::testing

#endif  // COSTBOUND_TESTS_FIXTURES_H_
