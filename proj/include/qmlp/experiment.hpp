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

#include <cstdint>
#include <optional>
#include <string>

#include "qmlp/report.hpp"

namespace qmlp {

struct ExperimentConfig {
  std::string command;  // swap-test, prep, perceptron, mlp-forward, mlp-train, hopfield
  std::string backend = "ideal-det";
  double epsilon = 1e-3;
  std::uint64_t seed = 0;
  std::string dataset;       // as written in the config
  std::string dataset_path;  // resolved against the config directory
  std::string output;        // empty: standard output; resolved like dataset

  double eta = 0.5;
  std::size_t epochs = 200;
  std::size_t max_updates = 1000;
  std::string strategy = "rotation";    // prep
  std::string activation = "threshold";  // hopfield
  std::string mode = "online";           // mlp-train: online or batch
  std::size_t hidden_units = 4;
  std::uint64_t model_seed = 1;
  double init_scale = 1.0;
  double hidden_beta = 1.0;
  double output_beta = 1.0;
  std::optional<std::size_t> qubit_cap;
  std::optional<std::size_t> value_frac_bits;
  bool record_wall_time = false;

  // Throws ConfigInvalid.
  void validate() const;
  // Everything that determines the result; the output path is left out.
  Json echo() const;
};

// Unknown keys are rejected. Relative dataset and output paths are resolved against
// `base_dir`.
ExperimentConfig parse_config(const Json& j, const std::string& base_dir);
ExperimentConfig load_config(const std::string& path);

struct ConfigOverrides {
  std::optional<std::string> command;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  std::optional<std::string> backend;
  std::optional<std::string> output;
};

ExperimentConfig apply_overrides(ExperimentConfig config, const ConfigOverrides& o);

ResultDocument run_experiment(const ExperimentConfig& config);

}  // namespace qmlp
