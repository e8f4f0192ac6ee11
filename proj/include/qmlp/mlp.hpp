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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qmlp/backend.hpp"
#include "qmlp/linalg.hpp"

namespace qmlp {

// 1 / (1 + exp(-a beta)).
double sigmoid(double a, double beta = 1.0);

// One hidden layer, no bias units (put a constant 1 into x for a bias).
// Rows of W are the hidden weights w_i, rows of V the output weights v_j.
struct MlpModel {
  std::vector<RealVector> W;  // n x m
  std::vector<RealVector> V;  // p x n
  double hidden_beta = 1.0;
  double output_beta = 1.0;

  std::size_t m() const { return W.empty() ? 0 : W.front().size(); }
  std::size_t n() const { return W.size(); }
  std::size_t p() const { return V.size(); }
  // Throws DimMismatch or InvalidArgument.
  void validate() const;
  // output_beta == 1/sqrt(n): the output swap test is read without the
  // sqrt(n) rescale.
  bool remark_mode() const;

  static MlpModel zeros(std::size_t m, std::size_t n, std::size_t p);
  // Entries uniform in [-scale, scale].
  static MlpModel random(std::size_t m, std::size_t n, std::size_t p, double scale, Rng& rng);
};

struct MlpSample {
  RealVector x;  // length m
  RealVector r;  // length p, entries in (0, 1)
};

struct TrainingSet {
  std::vector<MlpSample> samples;

  std::size_t d() const { return samples.size(); }
  // Throws DimMismatch against the model, InvalidArgument for targets
  // outside (0, 1) or an empty set.
  void validate(const MlpModel& model) const;
};

struct ForwardRecord {
  RealVector y;  // hidden outputs (estimates on the quantum path)
  RealVector z;  // outputs
  bool quantum = false;
  // Flag-0 amplitudes of the hidden and output coefficient states:
  // y_i / sqrt(n) and z_j / sqrt(p) in the mirror.
  RealVector hidden_payload;
  RealVector output_payload;
  // Estimated x.w_i and y.v_j.
  RealVector hidden_products;
  RealVector output_products;
  // Target precision of each layer's activations and the swap-test
  // precision that achieves it.
  double hidden_epsilon = 0.0;
  double output_epsilon = 0.0;
  double hidden_swap_epsilon = 0.0;
  double output_swap_epsilon = 0.0;
};

ForwardRecord classical_forward(const MlpModel& model, const RealVector& x);

struct Gradients {
  std::vector<RealVector> dV;  // p x n
  std::vector<RealVector> dW;  // n x m
};

// Online rule for one sample.
Gradients classical_gradients(const MlpModel& model, const MlpSample& sample, double eta);
// Batch rule: the online deltas at frozen weights summed over the set.
Gradients classical_gradients(const MlpModel& model, const TrainingSet& set, double eta);

// 1/2 sum_t sum_j (r_j - z_j)^2.
double error_energy(const MlpModel& model, const TrainingSet& set);

MlpModel apply_gradients(const MlpModel& model, const Gradients& g);

// Hidden coefficient state (1/sqrt n) sum_i phi(s_i) |i>|0> + junk with
// |phi(s_i) - phi(x.w_i)| <= epsilon, which implies
// |s_i - x.w_i| <= epsilon sqrt(|x|^2 + |w_i|^2) for beta = 1.
ForwardRecord quantum_forward_hidden(const RealVector& x, const MlpModel& model,
                                     double epsilon, Backend& backend);

// Output coefficient state from the hidden state |Y>: pairs (|Y>, v_j) give
// q_j = 2 (y.v_j / sqrt n) / (1 + |v_j|^2), read back as
// y.v_j = q_j sqrt(n) (1 + |v_j|^2) / 2. |z_j - phi(y.v_j)| <= epsilon for
// the y held in `hidden`.
ForwardRecord quantum_forward_output(const ForwardRecord& hidden, const MlpModel& model,
                                     double epsilon, Backend& backend);

// Both layers with the budget split so that |z_j - z_exact_j| <= epsilon.
ForwardRecord quantum_forward(const RealVector& x, const MlpModel& model, double epsilon,
                              Backend& backend);

// Skip rule: |r - z| < 1e-3, z < 1e-3 or z > 1 - 1e-3.
inline constexpr double kSkipThreshold = 1e-3;
bool skip_output(double r, double z);

// Estimated quantities one online step consumes.
struct OnlineTrace {
  RealVector y;
  RealVector z;
  // Estimated sum_i (r_i - z_i) z_i (1 - z_i) v_ij per hidden unit j.
  RealVector bracket;
  std::vector<bool> skipped;  // per output unit
  bool skip_step = false;     // every output skipped
};

// Trace built from exact activations and exact bracket sums, skip rule applied.
OnlineTrace classical_trace(const MlpModel& model, const MlpSample& sample);

// The update the mirror applies for a trace. Classical replays of a
// quantum run call the same function, so both stay bit-identical.
Gradients online_delta(const MlpModel& model, const MlpSample& sample,
                       const OnlineTrace& trace, double eta);

// Mirror plus the payload coefficient of each weight's flagged state.
// A weight state reads coefficient * w on its flag-0 branch.
struct MlpTrack {
  MlpModel mirror;
  RealVector v_coefficient;
  RealVector w_coefficient;
  std::size_t steps = 0;

  static MlpTrack fresh(MlpModel model);
};

struct OnlineStepResult {
  MlpTrack track;
  OnlineTrace trace;
  Gradients delta;
  bool skipped = false;  // SkipStep: the track is unchanged
};

OnlineStepResult quantum_online_step(const MlpTrack& track, const MlpSample& sample,
                                     double eta, double epsilon, Backend& backend);

// Flag-0 payload of a combination
// (|old>/c |+> + K |U> |->) / N followed by a Hadamard on the last qubit.
struct UpdateCombination {
  RealVector payload;             // (old + delta) / (sqrt 2 N)
  double success_amplitude = 0.0;  // |payload|
  double normalizer = 0.0;         // N
  double state_norm = 0.0;         // norm of the combined state before the Hadamard
};

struct BatchStepResult {
  MlpTrack track;
  std::vector<OnlineTrace> traces;
  Gradients delta;
  std::vector<UpdateCombination> v_combinations;
  std::vector<UpdateCombination> w_combinations;
};

BatchStepResult quantum_batch_step(const MlpTrack& track, const TrainingSet& set,
                                   double eta, double epsilon, Backend& backend);

// Epochs of d uniform draws with replacement.
struct OnlineRun {
  MlpTrack track;
  std::vector<std::size_t> order;
  std::vector<OnlineTrace> traces;
  std::size_t skipped_steps = 0;
};

OnlineRun quantum_train_online(const MlpModel& model, const TrainingSet& set, double eta,
                               double epsilon, std::size_t epochs, std::uint64_t seed,
                               Backend& backend);
// Same draw order with exact activations.
MlpModel classical_train_online(const MlpModel& model, const TrainingSet& set, double eta,
                                std::size_t epochs, std::uint64_t seed);
// Full-batch gradient descent; stops early once E < stop_below (0 disables).
struct BatchRun {
  MlpModel model;
  std::size_t epochs = 0;
  double final_error = 0.0;
};
BatchRun classical_train_batch(const MlpModel& model, const TrainingSet& set, double eta,
                               std::size_t max_epochs, double stop_below = 0.0);

// max |a - b| over every weight.
double max_weight_difference(const MlpModel& a, const MlpModel& b);

}  // namespace qmlp
