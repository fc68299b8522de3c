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

#ifndef COSTBOUND_RELEASE_IO_H_
#define COSTBOUND_RELEASE_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "costbound/release.h"

namespace costbound {

// File names inside a release directory.
inline constexpr const char* kMetricsFile = "metrics.csv";
inline constexpr const char* kDefectsFile = "defects.json";
inline constexpr const char* kMetaFile = "meta.json";

// metrics: CSV `artifact_id,size,<feature_1>,...,<feature_k>` with header.
// defects: JSON array of {"id", "artifacts", "fixed_at"}.
// meta:    JSON {"project", "release", "released_at"}.
// Every malformed input raises DataError prefixed with "<file>:<line>" or
// "<file>: entry <n>".
Release load_release(const std::filesystem::path& metrics_file,
                     const std::filesystem::path& defects_file,
                     const std::filesystem::path& meta_file);
Release load_release_dir(const std::filesystem::path& dir);

void write_release(const Release& release, const std::filesystem::path& dir);

// Every directory below `root` holding a meta.json, ordered by project,
// release date and release id.
std::vector<Release> load_corpus(const std::filesystem::path& root);
// Writes <root>/<project>/<release>/ for every release.
void write_corpus(const std::vector<Release>& releases,
                  const std::filesystem::path& root);

// Splits one CSV line; supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line);
// Quotes a field if it contains a comma, quote or newline.
std::string csv_escape(const std::string& field);
// Shortest representation that parses back to the same double; "nan",
// "inf" and "-inf" for the non-finite values.
std::string format_double(double v);
// Inverse of format_double; throws DataError on garbage.
double parse_double(const std::string& text);

void sort_releases(std::vector<Release>& releases);

}  // namespace costbound

#endif  // COSTBOUND_RELEASE_IO_H_
