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

#include "qmlp/perceptron.hpp"

#include <algorithm>
#include <cmath>

#include "qmlp/error.hpp"
#include "qmlp/phase_estimation.hpp"
#include "qmlp/resource.hpp"
#include "qmlp/swap_test.hpp"

namespace qmlp {
namespace {

// Finest swap-test grid the refinement loop asks an emulated backend for.
constexpr std::size_t kMaxEmulatedBits = 50;

struct SwapReading {
  double corrected = 0.0;
  double epsilon = 0.0;
};

std::size_t padded(std::size_t dim) { return std::size_t{1} << index_width(dim); }

SwapReading read_weight(const RealVector& x_unit, const QuantumWeightTrack& t,
                        double epsilon, Backend& backend) {
  const RealVector w_state = t.composite_state();
  RealVector x_state(w_state.size(), 0.0);
  std::copy(x_unit.begin(), x_unit.end(), x_state.begin());
  const double swap_eps = std::min(0.5, epsilon * t.coefficient);
  const InnerProductEstimate e = estimate_inner_product(x_state, w_state, swap_eps, backend);
  if (t.k > 0) {
    // Each load of the weight state replays the k-step preparation chain.
    const std::uint64_t loads = (std::uint64_t{1} << (e.n_bits + 1)) - 1;
    backend.ledger().record({EventKind::kPrep, index_width(w_state.size()) + 1 + e.n_bits,
                             loads * t.k, "weight_chain"});
  }
  return {e.value / t.coefficient, swap_eps / t.coefficient};
}

bool mirror_is_zero(const QuantumWeightTrack& t) {
  return std::all_of(t.mirror_w.begin(), t.mirror_w.end(), [](double a) { return a == 0.0; });
}

void check_options(const std::vector<LabeledSample>& data, const TrainingOptions& o) {
  if (data.empty()) fail(ErrorCode::kInvalidArgument, "empty training set");
  if (!(o.eta > 0.0 && o.eta <= 1.0)) fail(ErrorCode::kInvalidArgument, "eta must lie in (0, 1]");
  if (!(o.epsilon > 0.0 && o.epsilon <= 0.5)) {
    fail(ErrorCode::kInvalidArgument, "epsilon must lie in (0, 0.5]");
  }
  const std::size_t m = data.front().x.size();
  for (const LabeledSample& s : data) {
    if (s.x.size() != m) fail(ErrorCode::kDimMismatch, "samples differ in length");
  }
  if (o.initial_w && o.initial_w->size() != m) {
    fail(ErrorCode::kDimMismatch, "initial weight length differs from the samples");
  }
}

// Shared schedule of the quantum and classical trainers; `label` predicts
// sample i under the current track.
template <class Label>
PerceptronRun train(const std::vector<LabeledSample>& data, const TrainingOptions& o,
                    Label label) {
  check_options(data, o);
  const std::size_t d = data.size();
  std::vector<RealVector> xs;
  for (const LabeledSample& s : data) xs.push_back(normalized(s.x.entries()));
  PerceptronRun run;
  run.track = QuantumWeightTrack::fresh(
      o.initial_w.value_or(RealVector(data.front().x.size(), 0.0)), o.eta);
  Rng rng(o.seed);
  auto step = [&](std::size_t i) {
    const int y = label(xs[i], run.track);
    if (y == data[i].r) return false;
    if (run.updates >= o.max_updates) {
      fail(ErrorCode::kNotSeparableWithinBudget,
           "no separating weight after " + std::to_string(o.max_updates) + " updates");
    }
    run.track.update(xs[i], data[i].r, y);
    ++run.updates;
    run.update_sequence.push_back(i);
    return true;
  };
  while (!run.converged) {
    for (std::size_t j = 0; j < d; ++j) {
      step(draw_index(rng, d));
      ++run.draws;
    }
    bool changed = false;
    for (std::size_t i = 0; i < d; ++i) changed = step(i) || changed;
    ++run.passes;
    run.converged = !changed;
  }
  return run;
}

}  // namespace

LabeledSample make_sample(const RealVector& features, int label) {
  if (label != 1 && label != -1) fail(ErrorCode::kInvalidArgument, "labels must be +1 or -1");
  RealVector x{1.0};
  x.insert(x.end(), features.begin(), features.end());
  return {ClassicalVector(std::move(x)), label};
}

int threshold_output(double a) { return a > 0.0 ? 1 : -1; }

RealVector classical_step(const RealVector& w, const LabeledSample& sample, double eta) {
  const int y = threshold_output(dot(w, sample.x.entries()));
  RealVector out(w);
  if (y == sample.r) return out;
  const double f = eta * (sample.r - y);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += f * sample.x[i];
  return out;
}

double lambda_closed_form(double s, double eta, std::size_t k) {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "the chain starts at k = 1");
  return 1.0 / std::sqrt(4.0 / (s * s) + 4.0 * static_cast<double>(k - 1) * eta * eta);
}

double lambda_next(double lambda, double eta) {
  return lambda / std::sqrt(1.0 + 4.0 * lambda * lambda * eta * eta);
}

double chain_coefficient_next(double c, double eta) { return c / (1.0 + 2.0 * c * eta); }

QuantumWeightTrack QuantumWeightTrack::fresh(RealVector w, double eta) {
  QuantumWeightTrack t;
  t.eta = eta;
  const double n = norm(w);
  t.s = 1.0 / std::max(2.0 * eta, n);
  t.lambda = t.s / 2.0;
  t.coefficient = n > 0.0 ? 1.0 / n : 0.0;
  t.mirror_w = std::move(w);
  return t;
}

void QuantumWeightTrack::update(const RealVector& x_unit, int r, int y) {
  if (r == y) return;
  const double step = eta * (r - y);
  if (k == 0) {
    s = 1.0 / std::max(std::abs(step) * norm(x_unit), norm(mirror_w));
    lambda = s / 2.0;
    coefficient = s / 2.0;
  } else {
    lambda = lambda_next(lambda, eta);
    coefficient = chain_coefficient_next(coefficient, eta);
  }
  for (std::size_t i = 0; i < mirror_w.size(); ++i) mirror_w[i] += step * x_unit[i];
  ++k;
}

RealVector QuantumWeightTrack::composite_state() const {
  const std::size_t p = padded(mirror_w.size());
  RealVector v(2 * p, 0.0);
  double payload = 0.0;
  for (std::size_t i = 0; i < mirror_w.size(); ++i) {
    v[i] = coefficient * mirror_w[i];
    payload += v[i] * v[i];
  }
  if (payload == 0.0) fail(ErrorCode::kZeroVector, "weight state is empty");
  v[p] = std::sqrt(std::max(0.0, 1.0 - payload));
  return v;
}

int quantum_predict(const ClassicalVector& x, const QuantumWeightTrack& weights,
                    double epsilon, Backend& backend) {
  if (x.size() != weights.mirror_w.size()) fail(ErrorCode::kDimMismatch, "sample and weight lengths differ");
  if (mirror_is_zero(weights)) return threshold_output(0.0);
  const SwapReading r = read_weight(normalized(x.entries()), weights, epsilon, backend);
  if (std::abs(r.corrected) <= 2.0 * epsilon) {
    fail(ErrorCode::kAmbiguousSign, "estimate within 2 epsilon of zero");
  }
  return threshold_output(r.corrected);
}

PredictOutcome predict_refined(const ClassicalVector& x, const QuantumWeightTrack& weights,
                               double epsilon, Backend& backend) {
  if (x.size() != weights.mirror_w.size()) fail(ErrorCode::kDimMismatch, "sample and weight lengths differ");
  PredictOutcome out;
  out.epsilon = epsilon;
  if (mirror_is_zero(weights)) return out;
  const RealVector x_unit = normalized(x.entries());
  const std::size_t state_qubits = index_width(2 * padded(x.size()));
  for (;;) {
    const SwapReading r = read_weight(x_unit, weights, out.epsilon, backend);
    out.estimate = r.corrected;
    out.label = threshold_output(r.corrected);
    if (std::abs(r.corrected) > 2.0 * out.epsilon) break;
    const std::size_t next_bits =
        bits_for_epsilon(std::min(0.5, out.epsilon / 2.0 * weights.coefficient));
    const bool too_fine = backend.is_full()
                              ? state_qubits + 1 + next_bits > backend.qubit_cap()
                              : next_bits > kMaxEmulatedBits;
    if (too_fine) break;
    out.epsilon /= 2.0;
    ++out.refinements;
  }
  if (out.refinements > 0) {
    backend.ledger().note("ambiguous_refinements", static_cast<double>(out.refinements));
  }
  return out;
}

PerceptronRun quantum_train(const std::vector<LabeledSample>& data,
                            const TrainingOptions& options, Backend& backend) {
  return train(data, options, [&](const RealVector& x, const QuantumWeightTrack& t) {
    return predict_refined(ClassicalVector(x), t, options.epsilon, backend).label;
  });
}

PerceptronRun classical_train(const std::vector<LabeledSample>& data,
                              const TrainingOptions& options) {
  return train(data, options, [](const RealVector& x, const QuantumWeightTrack& t) {
    return threshold_output(dot(t.mirror_w, x));
  });
}

double training_accuracy(const std::vector<LabeledSample>& data, const RealVector& w) {
  if (data.empty()) return 0.0;
  std::size_t ok = 0;
  for (const LabeledSample& s : data) {
    if (threshold_output(dot(w, s.x.entries())) == s.r) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(data.size());
}

}  // namespace qmlp
