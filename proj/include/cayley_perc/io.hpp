// Copyright 2026 The cayley-perc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cayley_perc/error.hpp"
#include "cayley_perc/sweep.hpp"

namespace cperc {

inline constexpr std::string_view kCsvVersionLine = "# cayley-perc v1";

inline constexpr std::string_view kCsvColumns =
    "n,tree_id,epsilon,lambda,trial,seed,selected_count,largest,second_largest,num_components,"
    "relative_giant,predicted_survival,predicted_giant,gamma_nk_count";

// Shortest text that round-trips the double exactly.
inline std::string format_double(double x) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out;
  out += kCsvVersionLine;
  out += '\n';
  out += kCsvColumns;
  out += '\n';
  for (const SweepRow& r : rows) {
    out += std::to_string(r.n) + ',' + r.tree_id + ',' + format_double(r.epsilon) + ',' + format_double(r.lambda) +
           ',' + std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',' + std::to_string(r.selected_count) +
           ',' + std::to_string(r.largest) + ',' + std::to_string(r.second_largest) + ',' +
           std::to_string(r.num_components) + ',' + format_double(r.relative_giant) + ',' +
           format_double(r.predicted_survival) + ',' + format_double(r.predicted_giant) + ',' +
           std::to_string(r.gamma_nk_count) + '\n';
  }
  return out;
}

inline nlohmann::ordered_json to_json_value(const SweepRow& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["tree_id"] = r.tree_id;
  j["epsilon"] = r.epsilon;
  j["lambda"] = r.lambda;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["selected_count"] = r.selected_count;
  j["largest"] = r.largest;
  j["second_largest"] = r.second_largest;
  j["num_components"] = r.num_components;
  j["relative_giant"] = r.relative_giant;
  j["predicted_survival"] = r.predicted_survival;
  j["predicted_giant"] = r.predicted_giant;
  j["gamma_nk_count"] = r.gamma_nk_count;
  return j;
}

inline std::string to_json(const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SweepRow& r : rows) arr.push_back(to_json_value(r));
  return arr.dump(2) + "\n";
}

inline std::vector<SweepRow> parse_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kCsvColumns) throw UsageError("csv: unexpected header on line " + std::to_string(lineno));
      header_seen = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() != 14) throw UsageError("csv: line " + std::to_string(lineno) + " has " + std::to_string(f.size()) + " fields");
    try {
      SweepRow r;
      r.n = std::stoi(f[0]);
      r.tree_id = f[1];
      r.epsilon = std::stod(f[2]);
      r.lambda = std::stod(f[3]);
      r.trial = std::stoi(f[4]);
      r.seed = std::stoull(f[5]);
      r.selected_count = std::stoull(f[6]);
      r.largest = std::stoull(f[7]);
      r.second_largest = std::stoull(f[8]);
      r.num_components = std::stoull(f[9]);
      r.relative_giant = std::stod(f[10]);
      r.predicted_survival = std::stod(f[11]);
      r.predicted_giant = std::stod(f[12]);
      r.gamma_nk_count = std::stoull(f[13]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw UsageError("csv: malformed number on line " + std::to_string(lineno));
    }
  }
  return rows;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to a sibling temporary and renames it over `path`, so a failed run
// never leaves a truncated file behind.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.flush()) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

inline std::string render_rows(const std::vector<SweepRow>& rows, OutputFormat fmt) {
  return fmt == OutputFormat::kJson ? to_json(rows) : to_csv(rows);
}

}  // namespace cperc
