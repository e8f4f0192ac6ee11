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

#include "qmlp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "qmlp/backend.hpp"
#include "qmlp/dataset.hpp"
#include "qmlp/error.hpp"
#include "qmlp/hopfield.hpp"
#include "qmlp/mlp.hpp"
#include "qmlp/perceptron.hpp"
#include "qmlp/state_prep.hpp"
#include "qmlp/swap_test.hpp"

namespace qmlp {
namespace {

const std::set<std::string> kCommands = {"swap-test",   "prep",      "perceptron",
                                         "mlp-forward", "mlp-train", "hopfield"};

[[noreturn]] void invalid(const std::string& msg) { fail(ErrorCode::kConfigInvalid, msg); }

template <typename T>
T get_as(const Json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    invalid("field '" + key + "' has the wrong type");
  }
}

std::size_t get_count(const Json& j, const std::string& key) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    invalid("field '" + key + "' must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

double get_number(const Json& j, const std::string& key) {
  if (!j.is_number()) invalid("field '" + key + "' must be a number");
  return j.get<double>();
}

Backend make_backend(const ExperimentConfig& c) {
  Backend b = Backend::from_name(c.backend, c.seed);
  if (c.qubit_cap) b.set_qubit_cap(*c.qubit_cap);
  if (c.value_frac_bits) {
    FixedPointFormat f = b.value_format();
    f.frac_bits = *c.value_frac_bits;
    b.set_value_format(f);
  }
  return b;
}

double max_abs_diff(const RealVector& a, const RealVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Json model_json(const MlpModel& m) { return Json{{"V", m.V}, {"W", m.W}}; }

MlpModel initial_model(const ExperimentConfig& c, std::size_t m, std::size_t p) {
  Rng rng(c.model_seed);
  MlpModel model = MlpModel::random(m, c.hidden_units, p, c.init_scale, rng);
  model.hidden_beta = c.hidden_beta;
  model.output_beta = c.output_beta;
  model.validate();
  return model;
}

Json run_swap_test(const ExperimentConfig& c, Backend& backend) {
  const auto vectors = load_vectors(read_csv(c.dataset_path));
  if (vectors.size() < 2) fail(ErrorCode::kDatasetParseError, "swap-test needs two vectors");
  Json pairs = Json::array();
  double worst = 0.0;
  std::size_t within = 0;
  std::size_t bits = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      const auto e = estimate_inner_product(vectors[i], vectors[j], c.epsilon, backend);
      const double exact = dot(vectors[i], vectors[j]) / (norm(vectors[i]) * norm(vectors[j]));
      const double err = std::abs(e.value - exact);
      worst = std::max(worst, err);
      if (err <= c.epsilon) ++within;
      bits = e.n_bits;
      pairs.push_back(Json{{"error", err}, {"estimate", e.value}, {"exact", exact},
                           {"first", i}, {"second", j}});
    }
  }
  return Json{{"max_error", worst}, {"n_bits", bits}, {"pairs", pairs},
              {"within_epsilon", within}};
}

Json run_prep(const ExperimentConfig& c, Backend& backend) {
  const auto vectors = load_vectors(read_csv(c.dataset_path));
  const PrepStrategy strategy = parse_prep_strategy(c.strategy);
  Json rows = Json::array();
  double worst = 1.0;
  for (const auto& v : vectors) {
    const ClassicalVector x(v);
    const auto r = prepare_state(x, strategy, backend);
    const double f = payload_fidelity(r, x);
    worst = std::min(worst, f);
    rows.push_back(Json{{"fidelity", f}, {"kappa", x.kappa()},
                        {"success_amplitude", r.success_amplitude}});
  }
  return Json{{"min_fidelity", worst}, {"strategy", std::string(to_string(strategy))},
              {"vectors", rows}};
}

Json run_perceptron(const ExperimentConfig& c, Backend& backend) {
  const auto data = load_labeled(read_csv(c.dataset_path));
  TrainingOptions opt;
  opt.eta = c.eta;
  opt.epsilon = c.epsilon;
  opt.max_updates = c.max_updates;
  opt.seed = c.seed;
  const PerceptronRun q = quantum_train(data, opt, backend);
  const PerceptronRun cl = classical_train(data, opt);
  return Json{{"accuracy", training_accuracy(data, q.track.mirror_w)},
              {"classical_updates", cl.updates},
              {"converged", q.converged},
              {"draws", q.draws},
              {"matches_classical", q.update_sequence == cl.update_sequence},
              {"mirror_w", q.track.mirror_w},
              {"passes", q.passes},
              {"update_sequence", q.update_sequence},
              {"updates", q.updates}};
}

Json run_mlp_forward(const ExperimentConfig& c, Backend& backend) {
  const CsvTable table = read_csv(c.dataset_path);
  std::vector<RealVector> inputs;
  std::size_t p = 1;
  if (feature_count(table) == table.header.size()) {
    inputs = load_vectors(table);
  } else {
    const TrainingSet set = load_training_set(table);
    p = set.samples.front().r.size();
    for (const auto& s : set.samples) inputs.push_back(s.x);
  }
  const MlpModel model = initial_model(c, inputs.front().size(), p);
  Json samples = Json::array();
  double worst_y = 0.0;
  double worst_z = 0.0;
  for (const auto& x : inputs) {
    const ForwardRecord exact = classical_forward(model, x);
    const ForwardRecord q = quantum_forward(x, model, c.epsilon, backend);
    const double ey = max_abs_diff(q.y, exact.y);
    const double ez = max_abs_diff(q.z, exact.z);
    worst_y = std::max(worst_y, ey);
    worst_z = std::max(worst_z, ez);
    samples.push_back(Json{{"hidden_error", ey}, {"output_error", ez}, {"y", q.y},
                           {"y_exact", exact.y}, {"z", q.z}, {"z_exact", exact.z}});
  }
  return Json{{"max_hidden_error", worst_y}, {"max_output_error", worst_z},
              {"model", model_json(model)}, {"remark_mode", model.remark_mode()},
              {"samples", samples}};
}

Json run_mlp_train(const ExperimentConfig& c, Backend& backend) {
  const TrainingSet set = load_training_set(read_csv(c.dataset_path));
  const MlpModel model = initial_model(c, set.samples.front().x.size(),
                                       set.samples.front().r.size());
  set.validate(model);
  MlpModel exact;
  MlpModel mirror;
  Json extra = Json::object();
  if (c.mode == "online") {
    const OnlineRun run = quantum_train_online(model, set, c.eta, c.epsilon, c.epochs, c.seed,
                                               backend);
    exact = classical_train_online(model, set, c.eta, c.epochs, c.seed);
    mirror = run.track.mirror;
    extra["skipped_steps"] = run.skipped_steps;
    extra["steps"] = run.order.size();
  } else {
    MlpTrack track = MlpTrack::fresh(model);
    exact = model;
    for (std::size_t e = 0; e < c.epochs; ++e) {
      track = quantum_batch_step(track, set, c.eta, c.epsilon, backend).track;
      exact = apply_gradients(exact, classical_gradients(exact, set, c.eta));
    }
    mirror = track.mirror;
  }
  extra["classical_error"] = error_energy(exact, set);
  extra["initial_error"] = error_energy(model, set);
  extra["max_mirror_deviation"] = max_weight_difference(mirror, exact);
  extra["mirror"] = model_json(mirror);
  extra["mirror_error"] = error_energy(mirror, set);
  extra["mode"] = c.mode;
  return extra;
}

Json run_hopfield(const ExperimentConfig& c, Backend& backend) {
  const PatternMatrix X = load_patterns(read_csv(c.dataset_path));
  X.validate();
  const HopfieldWeights W = hebb_classical(X);
  const HebbResult h = hebb_quantum(X, c.epsilon, backend);
  double err = 0.0;
  for (std::size_t i = 0; i < W.N(); ++i) err = std::max(err, max_abs_diff(h.weights.W[i], W.W[i]));
  const double tol = c.epsilon * W.max_abs();
  const Activation act = parse_activation(c.activation);
  const RecallResult recall = recall_step(X, h.weights, act, c.epsilon, backend);
  Json out{{"activation", std::string(to_string(act))},
           {"ambiguous", recall.ambiguous.size()},
           {"degenerate_scale", h.degenerate_scale},
           {"max_weight_error", err},
           {"n_bits", h.n_bits},
           {"payload_norm", h.payload_norm},
           {"recalled", recall.X.rows},
           {"tolerance", tol},
           {"weights", h.weights.W},
           {"weights_exact", W.W},
           {"within_tolerance", err <= tol}};
  if (act == Activation::kThreshold) out["fixed_point"] = recall.X.rows == X.rows;
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!kCommands.count(command)) invalid("unknown command '" + command + "'");
  if (backend != "full" && backend != "ideal-det" && backend != "ideal-sampled") {
    invalid("unknown backend '" + backend + "'");
  }
  if (!(epsilon > 0.0 && epsilon <= 0.5)) invalid("epsilon must lie in (0, 0.5]");
  if (dataset.empty()) invalid("missing dataset");
  if (!(eta > 0.0) || !std::isfinite(eta)) invalid("eta must be positive");
  if (mode != "online" && mode != "batch") invalid("mode must be online or batch");
  if (hidden_units == 0) invalid("hidden_units must be positive");
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) invalid("init_scale must be >= 0");
  if (!(hidden_beta > 0.0) || !(output_beta > 0.0)) invalid("betas must be positive");
  try {
    parse_prep_strategy(strategy);
    parse_activation(activation);
  } catch (const Error& e) {
    invalid(e.what());
  }
}

Json ExperimentConfig::echo() const {
  Json j{{"activation", activation},   {"backend", backend},
         {"command", command},         {"dataset", dataset},
         {"epochs", epochs},           {"epsilon", epsilon},
         {"eta", eta},                 {"hidden_beta", hidden_beta},
         {"hidden_units", hidden_units}, {"init_scale", init_scale},
         {"max_updates", max_updates}, {"mode", mode},
         {"model_seed", model_seed},   {"output_beta", output_beta},
         {"record_wall_time", record_wall_time}, {"seed", seed},
         {"strategy", strategy}};
  if (qubit_cap) j["qubit_cap"] = *qubit_cap;
  if (value_frac_bits) j["value_frac_bits"] = *value_frac_bits;
  return j;
}

ExperimentConfig parse_config(const Json& j, const std::string& base_dir) {
  if (!j.is_object()) invalid("config must be a JSON object");
  ExperimentConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const Json& v = it.value();
    if (k == "command") c.command = get_as<std::string>(v, k);
    else if (k == "backend") c.backend = get_as<std::string>(v, k);
    else if (k == "epsilon") c.epsilon = get_number(v, k);
    else if (k == "seed") c.seed = get_count(v, k);
    else if (k == "dataset") c.dataset = get_as<std::string>(v, k);
    else if (k == "output") c.output = get_as<std::string>(v, k);
    else if (k == "eta") c.eta = get_number(v, k);
    else if (k == "epochs") c.epochs = get_count(v, k);
    else if (k == "max_updates") c.max_updates = get_count(v, k);
    else if (k == "strategy") c.strategy = get_as<std::string>(v, k);
    else if (k == "activation") c.activation = get_as<std::string>(v, k);
    else if (k == "mode") c.mode = get_as<std::string>(v, k);
    else if (k == "hidden_units") c.hidden_units = get_count(v, k);
    else if (k == "model_seed") c.model_seed = get_count(v, k);
    else if (k == "init_scale") c.init_scale = get_number(v, k);
    else if (k == "hidden_beta") c.hidden_beta = get_number(v, k);
    else if (k == "output_beta") c.output_beta = get_number(v, k);
    else if (k == "qubit_cap") c.qubit_cap = get_count(v, k);
    else if (k == "value_frac_bits") c.value_frac_bits = get_count(v, k);
    else if (k == "record_wall_time") c.record_wall_time = get_as<bool>(v, k);
    else invalid("unknown config field '" + k + "'");
  }
  if (!c.dataset.empty()) {
    std::filesystem::path p(c.dataset);
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    c.dataset_path = p.lexically_normal().string();
  }
  if (!c.output.empty() && std::filesystem::path(c.output).is_relative() && !base_dir.empty()) {
    c.output = (std::filesystem::path(base_dir) / c.output).lexically_normal().string();
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kIoError, "cannot open config " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  Json j;
  try {
    j = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    invalid(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j, std::filesystem::path(path).parent_path().string());
}

ExperimentConfig apply_overrides(ExperimentConfig c, const ConfigOverrides& o) {
  if (o.command) c.command = *o.command;
  if (o.seed) c.seed = *o.seed;
  if (o.epsilon) c.epsilon = *o.epsilon;
  if (o.backend) c.backend = *o.backend;
  if (o.output) c.output = *o.output;
  return c;
}

ResultDocument run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.dataset_path.empty()) invalid("dataset path was not resolved");
  const auto start = std::chrono::steady_clock::now();
  Backend backend = make_backend(config);
  ResultDocument doc;
  doc.config = config.echo();
  const std::string& cmd = config.command;
  if (cmd == "swap-test") doc.metrics = run_swap_test(config, backend);
  else if (cmd == "prep") doc.metrics = run_prep(config, backend);
  else if (cmd == "perceptron") doc.metrics = run_perceptron(config, backend);
  else if (cmd == "mlp-forward") doc.metrics = run_mlp_forward(config, backend);
  else if (cmd == "mlp-train") doc.metrics = run_mlp_train(config, backend);
  else doc.metrics = run_hopfield(config, backend);
  doc.ledger = ledger_to_json(backend.ledger());
  if (config.record_wall_time) {
    doc.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return doc;
}

}  // namespace qmlp
