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

#pragma once

#include <string>
#include <vector>

#include "qmlp/hopfield.hpp"
#include "qmlp/linalg.hpp"
#include "qmlp/mlp.hpp"
#include "qmlp/perceptron.hpp"

namespace qmlp {

// A numeric CSV file: one header row, then rows of equal length. Quoting is
// not supported. Blank lines are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<RealVector> rows;
};

// Throws IoError when the file cannot be read, DatasetParseError otherwise.
CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

// Feature columns must be named x_0, x_1, ... and come first.
std::size_t feature_count(const CsvTable& table);

// Rows of x_ columns only; every other column is rejected.
std::vector<RealVector> load_vectors(const CsvTable& table);
// x_0..x_{m-1} then r in {-1, +1}. x_0 is used as is, so a bias column
// belongs in the file.
std::vector<LabeledSample> load_labeled(const CsvTable& table);
// x_0..x_{m-1} then r (one output) or r_0..r_{p-1}.
TrainingSet load_training_set(const CsvTable& table);
// One pattern per row, x_ columns only.
PatternMatrix load_patterns(const CsvTable& table);

}  // namespace qmlp
