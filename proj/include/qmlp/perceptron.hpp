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
#include <optional>
#include <vector>

#include "qmlp/backend.hpp"
#include "qmlp/linalg.hpp"

namespace qmlp {

// x carries the bias input x_0 = 1 in front of the features.
struct LabeledSample {
  ClassicalVector x;
  int r = 1;
};

// Prepends the bias input; throws InvalidArgument unless label is +-1.
LabeledSample make_sample(const RealVector& features, int label);

// +1 if a > 0, -1 otherwise.
int threshold_output(double a);

// w + eta (r - y) x with y = threshold_output(w . x).
RealVector classical_step(const RealVector& w, const LabeledSample& sample, double eta);

// Coefficient printed for the measurement-free weight chain:
// lambda_1 = s/2, lambda_k = 1 / sqrt(4/s^2 + 4 (k-1) eta^2).
double lambda_closed_form(double s, double eta, std::size_t k);
double lambda_next(double lambda, double eta);
// Coefficient a two-term linear combination of unitaries actually attains:
// c_1 = s/2, 1/c_(k+1) = 1/c_k + 2 eta.
double chain_coefficient_next(double c, double eta);

// Weight kept as the flagged state coefficient * |w> + orthogonal part,
// never measured. `mirror_w` is the classically tracked weight vector.
struct QuantumWeightTrack {
  RealVector mirror_w;
  double eta = 0.0;
  double s = 0.0;
  double lambda = 0.0;
  double coefficient = 0.0;  // amplitude of the payload branch per unit of w
  std::size_t k = 0;

  static QuantumWeightTrack fresh(RealVector w, double eta);
  // Applies w += eta (r - y) x for a normalized x and advances the chain.
  void update(const RealVector& x_unit, int r, int y);
  // The normalized weight state the swap test reads: coefficient * w on the
  // flag-0 half, the remaining norm on the flag-1 half. Length 2 * pad(dim).
  RealVector composite_state() const;
};

struct PredictOutcome {
  int label = -1;
  double estimate = 0.0;  // corrected estimate of x/|x| . w
  double epsilon = 0.0;   // precision actually used
  std::size_t refinements = 0;
};

// One swap test against the weight state; throws AmbiguousSign when the
// corrected estimate lies within 2 epsilon of zero.
int quantum_predict(const ClassicalVector& x, const QuantumWeightTrack& weights,
                    double epsilon, Backend& backend);

// Halves epsilon while the estimate is ambiguous; past the floor the <= 0
// rule decides. A zero weight vector reads -1 without a swap test.
PredictOutcome predict_refined(const ClassicalVector& x, const QuantumWeightTrack& weights,
                               double epsilon, Backend& backend);

struct TrainingOptions {
  double eta = 0.5;
  double epsilon = 1e-3;
  std::size_t max_updates = 1000;
  std::uint64_t seed = 0;
  std::optional<RealVector> initial_w;
};

struct PerceptronRun {
  QuantumWeightTrack track;
  std::size_t updates = 0;
  std::size_t draws = 0;
  std::size_t passes = 0;
  std::vector<std::size_t> update_sequence;  // sample index of each update
  bool converged = false;
};

// Rounds of d random draws (uniform with replacement), each followed by an
// in-order pass; stops after a pass with no update. Inputs are normalized up
// front. Throws NotSeparableWithinBudget when max_updates is reached.
PerceptronRun quantum_train(const std::vector<LabeledSample>& data,
                            const TrainingOptions& options, Backend& backend);

// Same schedule and sample stream with exact labels.
PerceptronRun classical_train(const std::vector<LabeledSample>& data,
                              const TrainingOptions& options);

double training_accuracy(const std::vector<LabeledSample>& data, const RealVector& w);

}  // namespace qmlp
