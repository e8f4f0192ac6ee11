// Copyright 2026 The qmlp Authors
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

#include "qmlp/dataset.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qmlp/error.hpp"

namespace qmlp {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& cell, std::size_t line) {
  const std::string where = "line " + std::to_string(line);
  if (cell.empty()) fail(ErrorCode::kDatasetParseError, where + ": empty cell");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || errno == ERANGE || !std::isfinite(v)) {
    fail(ErrorCode::kDatasetParseError, where + ": not a finite number: '" + cell + "'");
  }
  return v;
}

void require_rows(const CsvTable& t) {
  if (t.rows.empty()) fail(ErrorCode::kDatasetParseError, "dataset has no rows");
}

// Column index of the first label; all label columns must follow.
std::vector<std::size_t> label_columns(const CsvTable& t, std::size_t m) {
  std::vector<std::size_t> cols;
  const std::size_t labels = t.header.size() - m;
  if (labels == 1 && t.header[m] == "r") return {m};
  for (std::size_t k = 0; k < labels; ++k) {
    if (t.header[m + k] != "r_" + std::to_string(k)) {
      fail(ErrorCode::kDatasetParseError, "unexpected column '" + t.header[m + k] + "'");
    }
    cols.push_back(m + k);
  }
  return cols;
}

RealVector features(const RealVector& row, std::size_t m) {
  return RealVector(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(m));
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::stringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (t.header.empty()) {
      for (const auto& c : cells) {
        if (c.empty()) fail(ErrorCode::kDatasetParseError, "empty column name in header");
      }
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      fail(ErrorCode::kDatasetParseError,
           "line " + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
               " cells, got " + std::to_string(cells.size()));
    }
    RealVector row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_number(c, lineno));
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) fail(ErrorCode::kDatasetParseError, "missing header row");
  return t;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kIoError, "cannot open dataset " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_csv(buf.str());
}

std::size_t feature_count(const CsvTable& table) {
  std::size_t m = 0;
  while (m < table.header.size() && table.header[m] == "x_" + std::to_string(m)) ++m;
  if (m == 0) fail(ErrorCode::kDatasetParseError, "first column must be x_0");
  return m;
}

std::vector<RealVector> load_vectors(const CsvTable& table) {
  const std::size_t m = feature_count(table);
  if (m != table.header.size()) {
    fail(ErrorCode::kDatasetParseError, "unexpected column '" + table.header[m] + "'");
  }
  require_rows(table);
  return table.rows;
}

std::vector<LabeledSample> load_labeled(const CsvTable& table) {
  const std::size_t m = feature_count(table);
  if (table.header.size() != m + 1 || table.header[m] != "r") {
    fail(ErrorCode::kDatasetParseError, "expected a single label column r after the features");
  }
  require_rows(table);
  std::vector<LabeledSample> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double r = table.rows[i][m];
    if (r != 1.0 && r != -1.0) {
      fail(ErrorCode::kDatasetParseError, "row " + std::to_string(i) + ": label must be +1 or -1");
    }
    out.push_back({ClassicalVector(features(table.rows[i], m)), r > 0 ? 1 : -1});
  }
  return out;
}

TrainingSet load_training_set(const CsvTable& table) {
  const std::size_t m = feature_count(table);
  if (table.header.size() == m) fail(ErrorCode::kDatasetParseError, "no label columns");
  const auto cols = label_columns(table, m);
  require_rows(table);
  TrainingSet set;
  for (const auto& row : table.rows) {
    MlpSample s{features(row, m), {}};
    for (std::size_t c : cols) s.r.push_back(row[c]);
    set.samples.push_back(std::move(s));
  }
  return set;
}

PatternMatrix load_patterns(const CsvTable& table) {
  PatternMatrix X;
  X.rows = load_vectors(table);
  X.discrete = true;
  for (const auto& row : X.rows) {
    for (double v : row) {
      if (v != 1.0 && v != -1.0) X.discrete = false;
    }
  }
  return X;
}

}  // namespace qmlp
