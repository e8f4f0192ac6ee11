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

// qmlp <command> --config <file> [--seed N] [--epsilon E]
//      [--backend full|ideal-det|ideal-sampled] [--out <file>]

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qmlp/error.hpp"
#include "qmlp/experiment.hpp"
#include "qmlp/report.hpp"

namespace {

// One line: "error: <Code>: <message>".
int report_error(std::string line) {
  std::replace(line.begin(), line.end(), '\n', ' ');
  std::cerr << "error: " << line << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum perceptron, MLP and Hopfield experiments"};
  std::string command;
  std::string config_path;
  qmlp::ConfigOverrides overrides;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  std::string backend;
  std::string out;

  app.add_option("command", command, "swap-test, prep, perceptron, mlp-forward, mlp-train or hopfield")
      ->required();
  app.add_option("--config", config_path, "JSON experiment config")->required();
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
  auto* eps_opt = app.add_option("--epsilon", epsilon, "target precision in (0, 0.5]");
  auto* backend_opt = app.add_option("--backend", backend, "full, ideal-det or ideal-sampled");
  auto* out_opt = app.add_option("--out", out, "result file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(std::string(qmlp::to_string(qmlp::ErrorCode::kConfigInvalid)) + ": " +
                        e.what());
  }

  overrides.command = command;
  if (*seed_opt) overrides.seed = seed;
  if (*eps_opt) overrides.epsilon = epsilon;
  if (*backend_opt) overrides.backend = backend;
  if (*out_opt) overrides.output = out;

  try {
    const qmlp::ExperimentConfig config =
        qmlp::apply_overrides(qmlp::load_config(config_path), overrides);
    const qmlp::ResultDocument doc = qmlp::run_experiment(config);
    if (config.output.empty()) {
      std::cout << qmlp::emit_json(doc.to_json()) << "\n";
    } else {
      qmlp::emit_report(doc, config.output);
    }
  } catch (const qmlp::Error& e) {
    return report_error(e.what());  // already prefixed with the code
  } catch (const std::exception& e) {
    return report_error(std::string("Internal: ") + e.what());
  }
  return 0;
}
