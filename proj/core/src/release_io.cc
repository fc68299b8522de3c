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

#include "costbound/release_io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "costbound/common.h"

namespace costbound {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

json read_json(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError(file.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(file.string() + ": " + e.what());
  }
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error(file.string() + ": cannot write");
  out << text;
}

std::string json_string_field(const json& obj, const char* key,
                              const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw DataError(where + ": missing string field \"" + key + "\"");
  }
  return it->get<std::string>();
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (quoted) throw DataError("unterminated quoted field");
  fields.push_back(trim(cur));
  return fields;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  if (text == "nan" || text == "NaN" || text == "NA" || text.empty()) {
    return kUndefined;
  }
  if (text == "inf" || text == "+inf" || text == "Infinity") return kInfinity;
  if (text == "-inf" || text == "-Infinity") return -kInfinity;
  double v = 0;
  const char* first = text.data();
  if (*first == '+') ++first;
  auto res = std::from_chars(first, text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw DataError("not a number: \"" + text + "\"");
  }
  return v;
}

Release load_release(const fs::path& metrics_file, const fs::path& defects_file,
                     const fs::path& meta_file) {
  const json meta = read_json(meta_file);
  if (!meta.is_object()) throw DataError(meta_file.string() + ": expected an object");
  const std::string where_meta = meta_file.string();
  const std::string project = json_string_field(meta, "project", where_meta);
  const std::string release_id = json_string_field(meta, "release", where_meta);
  Timestamp released_at;
  try {
    released_at = parse_timestamp(json_string_field(meta, "released_at", where_meta));
  } catch (const DataError& e) {
    throw DataError(where_meta + ": " + e.what());
  }

  std::ifstream in(metrics_file);
  if (!in) throw DataError(metrics_file.string() + ": cannot open");
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw DataError(metrics_file.string() + ": empty file");
  std::vector<std::string> header;
  try {
    header = split_csv_line(line);
  } catch (const DataError& e) {
    throw DataError(metrics_file.string() + ":1: " + e.what());
  }
  if (header.size() < 2 || header[0] != "artifact_id" || header[1] != "size") {
    throw DataError(metrics_file.string() +
                    ":1: header must start with artifact_id,size");
  }
  std::vector<std::string> feature_names(header.begin() + 2, header.end());
  std::vector<Artifact> artifacts;
  std::unordered_map<std::string, std::size_t> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = metrics_file.string() + ":" + std::to_string(line_no);
    std::vector<std::string> cells;
    try {
      cells = split_csv_line(line);
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
    if (cells.size() != header.size()) {
      throw DataError(where + ": expected " + std::to_string(header.size()) +
                      " columns, found " + std::to_string(cells.size()));
    }
    Artifact a;
    a.id = cells[0];
    if (a.id.empty()) throw DataError(where + ": empty artifact id");
    if (!seen.emplace(a.id, line_no).second) {
      throw DataError(where + ": duplicate artifact id \"" + a.id + "\"");
    }
    const std::string& size_text = cells[1];
    auto res = std::from_chars(size_text.data(), size_text.data() + size_text.size(),
                               a.size);
    if (res.ec != std::errc() || res.ptr != size_text.data() + size_text.size()) {
      throw DataError(where + ": size is not an integer: \"" + size_text + "\"");
    }
    if (a.size < 0) throw DataError(where + ": negative size " + size_text);
    a.features.reserve(feature_names.size());
    for (std::size_t j = 2; j < cells.size(); ++j) {
      try {
        a.features.push_back(parse_double(cells[j]));
      } catch (const DataError& e) {
        throw DataError(where + ": column \"" + header[j] + "\": " + e.what());
      }
    }
    artifacts.push_back(std::move(a));
  }

  const json defects_json = read_json(defects_file);
  if (!defects_json.is_array()) {
    throw DataError(defects_file.string() + ": expected a JSON array");
  }
  std::vector<Defect> defects;
  for (std::size_t i = 0; i < defects_json.size(); ++i) {
    const json& d = defects_json[i];
    const std::string where = defects_file.string() + ": entry " + std::to_string(i);
    if (!d.is_object()) throw DataError(where + ": expected an object");
    Defect defect;
    defect.id = json_string_field(d, "id", where);
    auto arts = d.find("artifacts");
    if (arts == d.end() || !arts->is_array() || arts->empty()) {
      throw DataError(where + ": \"artifacts\" must be a non-empty array");
    }
    for (const json& a : *arts) {
      if (!a.is_string()) throw DataError(where + ": artifact ids must be strings");
      const std::string id = a.get<std::string>();
      if (!seen.contains(id)) {
        throw DataError(where + ": unknown artifact id \"" + id + "\"");
      }
      defect.artifacts.push_back(id);
    }
    auto fixed = d.find("fixed_at");
    if (fixed != d.end() && !fixed->is_null()) {
      if (!fixed->is_string()) throw DataError(where + ": fixed_at must be a string");
      try {
        defect.fixed_at = parse_timestamp(fixed->get<std::string>());
      } catch (const DataError& e) {
        throw DataError(where + ": " + e.what());
      }
    }
    defects.push_back(std::move(defect));
  }
  return Release::create(project, release_id, released_at, std::move(artifacts),
                         std::move(defects), std::move(feature_names));
}

Release load_release_dir(const fs::path& dir) {
  return load_release(dir / kMetricsFile, dir / kDefectsFile, dir / kMetaFile);
}

void write_release(const Release& release, const fs::path& dir) {
  fs::create_directories(dir);
  std::ostringstream csv;
  csv << "artifact_id,size";
  for (const auto& name : release.feature_names()) csv << ',' << csv_escape(name);
  csv << '\n';
  for (const Artifact& a : release.artifacts()) {
    csv << csv_escape(a.id) << ',' << a.size;
    for (double f : a.features) csv << ',' << format_double(f);
    csv << '\n';
  }
  write_text(dir / kMetricsFile, csv.str());

  json defects = json::array();
  for (const Defect& d : release.defects()) {
    json entry = {{"id", d.id}, {"artifacts", d.artifacts}};
    entry["fixed_at"] = d.fixed_at ? json(format_timestamp(*d.fixed_at)) : json(nullptr);
    defects.push_back(std::move(entry));
  }
  write_text(dir / kDefectsFile, defects.dump(1) + "\n");

  const json meta = {{"project", release.project()},
                     {"release", release.release_id()},
                     {"released_at", format_timestamp(release.released_at())}};
  write_text(dir / kMetaFile, meta.dump(1) + "\n");
}

void sort_releases(std::vector<Release>& releases) {
  std::sort(releases.begin(), releases.end(), [](const Release& a, const Release& b) {
    if (a.project() != b.project()) return a.project() < b.project();
    if (a.released_at() != b.released_at()) return a.released_at() < b.released_at();
    return a.release_id() < b.release_id();
  });
}

std::vector<Release> load_corpus(const fs::path& root) {
  if (!fs::is_directory(root)) {
    throw DataError(root.string() + ": not a directory");
  }
  std::vector<fs::path> dirs;
  if (fs::exists(root / kMetaFile)) dirs.push_back(root);
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_directory() && fs::exists(entry.path() / kMetaFile)) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<Release> releases;
  releases.reserve(dirs.size());
  for (const auto& d : dirs) releases.push_back(load_release_dir(d));
  sort_releases(releases);
  return releases;
}

void write_corpus(const std::vector<Release>& releases, const fs::path& root) {
  for (const Release& r : releases) {
    write_release(r, root / r.project() / r.release_id());
  }
}

}  // namespace costbound
