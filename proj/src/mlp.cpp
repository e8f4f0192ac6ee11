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

#include "qmlp/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmlp/error.hpp"
#include "qmlp/resource.hpp"
#include "qmlp/swap_test.hpp"

namespace qmlp {
namespace {

std::size_t padded(std::size_t dim) { return std::size_t{1} << index_width(dim); }

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "epsilon must lie in (0, 1]");
  }
}

void check_input(const MlpModel& model, const RealVector& x) {
  model.validate();
  if (x.size() != model.m()) fail(ErrorCode::kDimMismatch, "input length differs from m");
}

void check_sample(const MlpModel& model, const MlpSample& s) {
  check_input(model, s.x);
  if (s.r.size() != model.p()) fail(ErrorCode::kDimMismatch, "target length differs from p");
}

double residual_factor(double r, double z) { return (r - z) * z * (1.0 - z); }

double squared_norm(const RealVector& v) { return dot(v, v); }

std::vector<RealVector> zero_rows(std::size_t rows, std::size_t cols) {
  return std::vector<RealVector>(rows, RealVector(cols, 0.0));
}

Gradients zero_gradients(const MlpModel& model) {
  return {zero_rows(model.p(), model.n()), zero_rows(model.n(), model.m())};
}

void accumulate(Gradients& into, const Gradients& g) {
  for (std::size_t j = 0; j < into.dV.size(); ++j) {
    for (std::size_t k = 0; k < into.dV[j].size(); ++k) into.dV[j][k] += g.dV[j][k];
  }
  for (std::size_t j = 0; j < into.dW.size(); ++j) {
    for (std::size_t k = 0; k < into.dW[j].size(); ++k) into.dW[j][k] += g.dW[j][k];
  }
}

// Reading of one output pair: y.v_j = q * scale, z_j = sigmoid(q * scale, beta).
// In remark mode the sqrt(n) of the pair normalization cancels against the
// sigmoid scale and is never applied.
struct OutputMap {
  double scale = 0.0;
  double beta = 1.0;

  double product(double q) const { return q * scale; }
  double z(double q) const { return sigmoid(q * scale, beta); }
};

OutputMap output_map(const MlpModel& model, std::size_t j) {
  const double n = static_cast<double>(model.n());
  const double vv = 1.0 + squared_norm(model.V[j]);
  if (model.remark_mode()) return {vv / 2.0, 1.0};
  return {std::sqrt(n) * vv / 2.0, model.output_beta};
}

// |Y> over (index, flag), index in the low bits.
RealVector hidden_state(const RealVector& y) {
  const std::size_t n = y.size();
  const std::size_t pad = padded(n);
  const double inv = 1.0 / std::sqrt(static_cast<double>(n));
  RealVector s(2 * pad, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = y[i] * inv;
    s[pad + i] = std::sqrt(std::max(0.0, 1.0 - y[i] * y[i])) * inv;
  }
  return s;
}

PairBatch output_pairs(const MlpModel& model, const RealVector& y) {
  const RealVector Y = hidden_state(y);
  PairBatch batch;
  for (const RealVector& v : model.V) {
    RealVector vp(Y.size(), 0.0);
    std::copy(v.begin(), v.end(), vp.begin());
    batch.pairs.push_back({Y, std::move(vp)});
  }
  return batch;
}

double output_swap_epsilon(const MlpModel& model, double epsilon) {
  double eps = 0.5;
  for (std::size_t j = 0; j < model.p(); ++j) {
    const OutputMap om = output_map(model, j);
    // |dz| <= beta/4 * scale * |dq|.
    eps = std::min(eps, 4.0 * epsilon / (om.beta * om.scale));
  }
  return eps;
}

// sum_i (r_i - z_i) z_i (1 - z_i) v_ij for every hidden unit j. The signed
// terms are written into a coefficient state over the p output branches and
// summed by a swap test against (1/sqrt(2p)) sum_i |i>|0>(|0> - |1>), whose
// overlap is sum_i c_i / (p sqrt 2).
RealVector estimate_brackets(const MlpModel& model, const ForwardRecord& f,
                             const RealVector& r, double epsilon, Backend& backend) {
  const std::size_t n = model.n();
  const std::size_t p = model.p();
  const std::size_t pad = padded(p);
  const double pd = static_cast<double>(p);
  RealVector ref(4 * pad, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    ref[i] = 1.0 / std::sqrt(2.0 * pd);
    ref[i + 2 * pad] = -1.0 / std::sqrt(2.0 * pd);
  }
  std::vector<OutputMap> maps;
  for (std::size_t i = 0; i < p; ++i) maps.push_back(output_map(model, i));

  RealVector bracket(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double largest = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      largest = std::max(largest, std::abs(residual_factor(r[i], f.z[i]) * model.V[i][j]));
    }
    if (largest == 0.0) continue;
    const double scale = 1.0 / largest;
    PairBatch batch = output_pairs(model, f.y);
    for (std::size_t i = 0; i < p; ++i) {
      const OutputMap om = maps[i];
      const double ri = r[i];
      const double vij = model.V[i][j];
      // Clamped because a sampled backend may read a different z than the
      // one `scale` was computed from.
      batch.functions.push_back([om, ri, vij, scale](double q) {
        return std::clamp(scale * residual_factor(ri, om.z(q)) * vij, -1.0, 1.0);
      });
    }
    const CoefficientResult c =
        amplitudes_to_coefficients(batch, f.output_swap_epsilon, backend, "mlp_bracket");
    RealVector state(4 * pad, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
      const double g = c.coefficients[i];
      const std::size_t sign = g < 0.0 ? 2 : 0;
      state[i + sign * pad] = std::abs(g) / std::sqrt(pd);
      state[i + (sign + 1) * pad] = std::sqrt(std::max(0.0, 1.0 - g * g)) / std::sqrt(pd);
    }
    const double eps = std::min(0.5, epsilon * scale / (pd * std::sqrt(2.0)));
    const InnerProductEstimate e = estimate_inner_product(ref, state, eps, backend);
    bracket[j] = pd * std::sqrt(2.0) * e.value / scale;
  }
  return bracket;
}

OnlineTrace trace_for(const MlpModel& model, const MlpSample& sample, const ForwardRecord& f,
                      double epsilon, bool allow_skip, Backend& backend) {
  OnlineTrace t;
  t.y = f.y;
  t.z = f.z;
  t.skipped.assign(model.p(), false);
  t.bracket.assign(model.n(), 0.0);
  if (allow_skip) {
    t.skip_step = true;
    for (std::size_t j = 0; j < model.p(); ++j) {
      t.skipped[j] = skip_output(sample.r[j], f.z[j]);
      t.skip_step = t.skip_step && t.skipped[j];
    }
    if (t.skip_step) return t;
  }
  t.bracket = estimate_brackets(model, f, sample.r, epsilon, backend);
  return t;
}

OnlineTrace exact_trace(const MlpModel& model, const MlpSample& sample, bool allow_skip) {
  const ForwardRecord f = classical_forward(model, sample.x);
  OnlineTrace t;
  t.y = f.y;
  t.z = f.z;
  t.skipped.assign(model.p(), false);
  t.bracket.assign(model.n(), 0.0);
  for (std::size_t j = 0; j < model.n(); ++j) {
    for (std::size_t i = 0; i < model.p(); ++i) {
      t.bracket[j] += residual_factor(sample.r[i], f.z[i]) * model.V[i][j];
    }
  }
  if (allow_skip) {
    t.skip_step = true;
    for (std::size_t j = 0; j < model.p(); ++j) {
      t.skipped[j] = skip_output(sample.r[j], f.z[j]);
      t.skip_step = t.skip_step && t.skipped[j];
    }
  }
  return t;
}

// Payload of (|old>/c |+> + K |U> |->) / N after a Hadamard on the last qubit,
// where |old> = c old + junk and |U> = delta / K + junk.
UpdateCombination combine(const RealVector& old, double c, const RealVector& delta, double K) {
  const double old_payload = c * norm(old);
  const double old_junk = std::sqrt(std::max(0.0, 1.0 - old_payload * old_payload));
  const double u_payload = norm(delta) / K;
  if (u_payload > 1.0 + 1e-12) fail(ErrorCode::kInvalidArgument, "update state not normalizable");
  const double u_junk = std::sqrt(std::max(0.0, 1.0 - u_payload * u_payload));

  UpdateCombination out;
  out.normalizer = std::sqrt(1.0 / (c * c) + K * K);
  const double plus = (old_payload * old_payload + old_junk * old_junk) / (c * c);
  const double minus = K * K * (u_payload * u_payload + u_junk * u_junk);
  out.state_norm = std::sqrt(plus + minus) / out.normalizer;
  const double h = 1.0 / (std::sqrt(2.0) * out.normalizer);
  out.payload.resize(old.size());
  for (std::size_t k = 0; k < old.size(); ++k) {
    out.payload[k] = (old[k] + delta[k]) * h;
  }
  out.success_amplitude = norm(out.payload);
  return out;
}

double fresh_coefficient(const RealVector& w) {
  const double a = norm(w);
  return a > 0.0 ? 1.0 / a : 1.0;
}

}  // namespace

double sigmoid(double a, double beta) { return 1.0 / (1.0 + std::exp(-a * beta)); }

void MlpModel::validate() const {
  if (W.empty() || V.empty() || W.front().empty()) {
    fail(ErrorCode::kInvalidArgument, "n, m and p must be at least 1");
  }
  for (const RealVector& w : W) {
    if (w.size() != m()) fail(ErrorCode::kDimMismatch, "hidden rows differ in length");
    for (double a : w) {
      if (!std::isfinite(a)) fail(ErrorCode::kInvalidArgument, "non-finite weight");
    }
  }
  for (const RealVector& v : V) {
    if (v.size() != n()) fail(ErrorCode::kDimMismatch, "output rows must have length n");
    for (double a : v) {
      if (!std::isfinite(a)) fail(ErrorCode::kInvalidArgument, "non-finite weight");
    }
  }
  if (!(hidden_beta > 0.0 && output_beta > 0.0 && std::isfinite(hidden_beta) &&
        std::isfinite(output_beta))) {
    fail(ErrorCode::kInvalidArgument, "sigmoid scales must be positive");
  }
}

bool MlpModel::remark_mode() const {
  const double target = 1.0 / std::sqrt(static_cast<double>(n()));
  return std::abs(output_beta - target) <= 1e-12 * target;
}

MlpModel MlpModel::zeros(std::size_t m, std::size_t n, std::size_t p) {
  return {zero_rows(n, m), zero_rows(p, n), 1.0, 1.0};
}

MlpModel MlpModel::random(std::size_t m, std::size_t n, std::size_t p, double scale,
                          Rng& rng) {
  MlpModel model = zeros(m, n, p);
  for (RealVector& w : model.W) {
    for (double& a : w) a = scale * (2.0 * uniform01(rng) - 1.0);
  }
  for (RealVector& v : model.V) {
    for (double& a : v) a = scale * (2.0 * uniform01(rng) - 1.0);
  }
  return model;
}

void TrainingSet::validate(const MlpModel& model) const {
  if (samples.empty()) fail(ErrorCode::kInvalidArgument, "empty training set");
  for (const MlpSample& s : samples) {
    check_sample(model, s);
    for (double r : s.r) {
      if (!(r > 0.0 && r < 1.0)) fail(ErrorCode::kInvalidArgument, "targets must lie in (0, 1)");
    }
  }
}

ForwardRecord classical_forward(const MlpModel& model, const RealVector& x) {
  check_input(model, x);
  ForwardRecord f;
  for (const RealVector& w : model.W) f.y.push_back(sigmoid(dot(x, w), model.hidden_beta));
  for (const RealVector& v : model.V) f.z.push_back(sigmoid(dot(f.y, v), model.output_beta));
  return f;
}

Gradients classical_gradients(const MlpModel& model, const MlpSample& sample, double eta) {
  check_sample(model, sample);
  return online_delta(model, sample, exact_trace(model, sample, false), eta);
}

Gradients classical_gradients(const MlpModel& model, const TrainingSet& set, double eta) {
  Gradients total = zero_gradients(model);
  for (const MlpSample& s : set.samples) accumulate(total, classical_gradients(model, s, eta));
  return total;
}

double error_energy(const MlpModel& model, const TrainingSet& set) {
  double e = 0.0;
  for (const MlpSample& s : set.samples) {
    check_sample(model, s);
    const ForwardRecord f = classical_forward(model, s.x);
    for (std::size_t j = 0; j < model.p(); ++j) e += 0.5 * (s.r[j] - f.z[j]) * (s.r[j] - f.z[j]);
  }
  return e;
}

MlpModel apply_gradients(const MlpModel& model, const Gradients& g) {
  MlpModel out = model;
  if (g.dV.size() != model.p() || g.dW.size() != model.n()) {
    fail(ErrorCode::kDimMismatch, "gradient shape differs from the model");
  }
  for (std::size_t j = 0; j < model.p(); ++j) {
    for (std::size_t k = 0; k < model.n(); ++k) out.V[j][k] += g.dV[j][k];
  }
  for (std::size_t j = 0; j < model.n(); ++j) {
    for (std::size_t k = 0; k < model.m(); ++k) out.W[j][k] += g.dW[j][k];
  }
  return out;
}

ForwardRecord quantum_forward_hidden(const RealVector& x, const MlpModel& model,
                                     double epsilon, Backend& backend) {
  check_input(model, x);
  check_epsilon(epsilon);
  const double beta = model.hidden_beta;
  const double xx = squared_norm(x);
  PairBatch batch;
  RealVector scale;
  double eps = 0.5;
  for (const RealVector& w : model.W) {
    const double S = xx + squared_norm(w);
    batch.pairs.push_back({x, w});
    // x.w = q S / 2; the sigmoid is beta/4-Lipschitz.
    batch.functions.push_back([S, beta](double q) { return sigmoid(q * S / 2.0, beta); });
    scale.push_back(S / 2.0);
    if (S > 0.0) eps = std::min({eps, 8.0 * epsilon / (beta * S), 2.0 * epsilon / std::sqrt(S)});
  }
  const CoefficientResult c = amplitudes_to_coefficients(batch, eps, backend, "mlp_hidden");
  backend.ledger().note("hidden_swap_epsilon", eps);

  ForwardRecord f;
  f.quantum = true;
  f.y = c.coefficients;
  f.hidden_payload = c.payload;
  for (std::size_t i = 0; i < model.n(); ++i) f.hidden_products.push_back(c.estimates[i] * scale[i]);
  f.hidden_epsilon = epsilon;
  f.hidden_swap_epsilon = eps;
  return f;
}

ForwardRecord quantum_forward_output(const ForwardRecord& hidden, const MlpModel& model,
                                     double epsilon, Backend& backend) {
  model.validate();
  check_epsilon(epsilon);
  if (hidden.y.size() != model.n()) fail(ErrorCode::kDimMismatch, "hidden record differs from n");
  PairBatch batch = output_pairs(model, hidden.y);
  std::vector<OutputMap> maps;
  for (std::size_t j = 0; j < model.p(); ++j) {
    maps.push_back(output_map(model, j));
    const OutputMap om = maps.back();
    batch.functions.push_back([om](double q) { return om.z(q); });
  }
  const double eps = output_swap_epsilon(model, epsilon);
  const CoefficientResult c = amplitudes_to_coefficients(batch, eps, backend, "mlp_output");
  backend.ledger().note("output_swap_epsilon", eps);

  ForwardRecord f = hidden;
  f.z = c.coefficients;
  f.output_payload = c.payload;
  f.output_products.clear();
  for (std::size_t j = 0; j < model.p(); ++j) f.output_products.push_back(maps[j].product(c.estimates[j]));
  f.output_epsilon = epsilon;
  f.output_swap_epsilon = eps;
  return f;
}

ForwardRecord quantum_forward(const RealVector& x, const MlpModel& model, double epsilon,
                              Backend& backend) {
  check_input(model, x);
  check_epsilon(epsilon);
  // Half the budget to the output reading, half to the hidden errors it
  // propagates: |dz_j| <= beta_o/4 * |v_j|_1 * max |dy_i|.
  double lipschitz = 0.0;
  for (const RealVector& v : model.V) {
    double l1 = 0.0;
    for (double a : v) l1 += std::abs(a);
    lipschitz = std::max(lipschitz, model.output_beta / 4.0 * l1);
  }
  const double hidden_eps = 0.5 * epsilon / std::max(1.0, lipschitz);
  const ForwardRecord h = quantum_forward_hidden(x, model, hidden_eps, backend);
  return quantum_forward_output(h, model, 0.5 * epsilon, backend);
}

OnlineTrace classical_trace(const MlpModel& model, const MlpSample& sample) {
  check_sample(model, sample);
  return exact_trace(model, sample, true);
}

bool skip_output(double r, double z) {
  return std::abs(r - z) < kSkipThreshold || z < kSkipThreshold || z > 1.0 - kSkipThreshold;
}

Gradients online_delta(const MlpModel& model, const MlpSample& sample,
                       const OnlineTrace& trace, double eta) {
  Gradients g = zero_gradients(model);
  if (trace.skip_step) return g;
  for (std::size_t j = 0; j < model.p(); ++j) {
    if (trace.skipped[j]) continue;
    const double delta = eta * residual_factor(sample.r[j], trace.z[j]);
    for (std::size_t k = 0; k < model.n(); ++k) g.dV[j][k] = delta * trace.y[k];
  }
  for (std::size_t j = 0; j < model.n(); ++j) {
    const double gj = eta * trace.bracket[j] * trace.y[j] * (1.0 - trace.y[j]);
    for (std::size_t k = 0; k < model.m(); ++k) g.dW[j][k] = gj * sample.x[k];
  }
  return g;
}

MlpTrack MlpTrack::fresh(MlpModel model) {
  model.validate();
  MlpTrack t;
  for (const RealVector& v : model.V) t.v_coefficient.push_back(fresh_coefficient(v));
  for (const RealVector& w : model.W) t.w_coefficient.push_back(fresh_coefficient(w));
  t.mirror = std::move(model);
  return t;
}

OnlineStepResult quantum_online_step(const MlpTrack& track, const MlpSample& sample,
                                     double eta, double epsilon, Backend& backend) {
  const MlpModel& model = track.mirror;
  check_sample(model, sample);
  if (!(eta > 0.0)) fail(ErrorCode::kInvalidArgument, "eta must be positive");
  const ForwardRecord f = quantum_forward(sample.x, model, epsilon, backend);

  OnlineStepResult out;
  out.trace = trace_for(model, sample, f, epsilon, true, backend);
  out.delta = online_delta(model, sample, out.trace, eta);
  out.track = track;
  if (out.trace.skip_step) {
    out.skipped = true;
    backend.ledger().note("skip_step", 1.0);
    return out;
  }
  out.track.mirror = apply_gradients(model, out.delta);
  ++out.track.steps;

  // Two-term LCU per row: old state plus the signed |Y> (payload y/sqrt n)
  // or |x> (payload x/|x|) term; 1/c' = 1/c + |step| * (state norm factor).
  const double sqrt_n = std::sqrt(static_cast<double>(model.n()));
  const double x_norm = norm(sample.x);
  std::uint64_t rows = 0;
  for (std::size_t j = 0; j < model.p(); ++j) {
    if (out.trace.skipped[j]) continue;
    const double a = eta * std::abs(residual_factor(sample.r[j], out.trace.z[j])) * sqrt_n;
    double& c = out.track.v_coefficient[j];
    c = c / (1.0 + c * a);
    ++rows;
  }
  for (std::size_t j = 0; j < model.n(); ++j) {
    const double gj = out.trace.bracket[j] * out.trace.y[j] * (1.0 - out.trace.y[j]);
    const double a = eta * std::abs(gj) * x_norm;
    double& c = out.track.w_coefficient[j];
    c = c / (1.0 + c * a);
    ++rows;
  }
  const std::size_t width = index_width(std::max(model.m(), 2 * padded(model.n()))) + 2;
  backend.ledger().record({EventKind::kPrep, width, 2 * rows, "mlp_online_update"});
  return out;
}

BatchStepResult quantum_batch_step(const MlpTrack& track, const TrainingSet& set, double eta,
                                   double epsilon, Backend& backend) {
  const MlpModel& model = track.mirror;
  set.validate(model);
  if (!(eta > 0.0)) fail(ErrorCode::kInvalidArgument, "eta must be positive");
  const std::size_t n = model.n();
  const std::size_t m = model.m();
  const std::size_t p = model.p();
  const double d = static_cast<double>(set.d());

  BatchStepResult out;
  out.delta = zero_gradients(model);
  for (const MlpSample& s : set.samples) {
    const ForwardRecord f = quantum_forward(s.x, model, epsilon, backend);
    out.traces.push_back(trace_for(model, s, f, epsilon, false, backend));
    accumulate(out.delta, online_delta(model, s, out.traces.back(), eta));
  }

  out.track = track;
  out.track.mirror = apply_gradients(model, out.delta);
  ++out.track.steps;
  ResourceLedger& l = backend.ledger();
  const std::size_t t_bits = index_width(set.d());

  // Output rows: s = 1 / max_t eta |delta_j^t|, K = d sqrt(n) / s.
  for (std::size_t j = 0; j < p; ++j) {
    double largest = 0.0;
    for (std::size_t t = 0; t < set.d(); ++t) {
      largest = std::max(largest, eta * std::abs(residual_factor(set.samples[t].r[j],
                                                                 out.traces[t].z[j])));
    }
    const double s = largest > 0.0 ? 1.0 / largest : 1.0 / eta;
    const double K = d * std::sqrt(static_cast<double>(n)) / s;
    UpdateCombination uc = combine(model.V[j], track.v_coefficient[j], out.delta.dV[j], K);
    out.track.v_coefficient[j] = 1.0 / (std::sqrt(2.0) * uc.normalizer);
    l.note("v_update_success_amplitude", uc.success_amplitude);
    l.record({EventKind::kPrep, t_bits + index_width(2 * padded(n)) + 2, set.d() + 1,
              "mlp_batch_update"});
    l.record({EventKind::kRotation, t_bits + index_width(2 * padded(n)) + 2, 1,
              "mlp_batch_update"});
    out.v_combinations.push_back(std::move(uc));
  }
  // Hidden rows: s^ = 1 / max_t eta |g_j^t| |x^t|, K = d / s^.
  for (std::size_t j = 0; j < n; ++j) {
    double largest = 0.0;
    for (std::size_t t = 0; t < set.d(); ++t) {
      const OnlineTrace& tr = out.traces[t];
      const double gj = tr.bracket[j] * tr.y[j] * (1.0 - tr.y[j]);
      largest = std::max(largest, eta * std::abs(gj) * norm(set.samples[t].x));
    }
    const double s = largest > 0.0 ? 1.0 / largest : 1.0 / eta;
    const double K = d / s;
    UpdateCombination uc = combine(model.W[j], track.w_coefficient[j], out.delta.dW[j], K);
    out.track.w_coefficient[j] = 1.0 / (std::sqrt(2.0) * uc.normalizer);
    l.note("w_update_success_amplitude", uc.success_amplitude);
    l.record({EventKind::kPrep, t_bits + index_width(m) + 2, set.d() + 1, "mlp_batch_update"});
    l.record({EventKind::kRotation, t_bits + index_width(m) + 2, 1, "mlp_batch_update"});
    out.w_combinations.push_back(std::move(uc));
  }
  return out;
}

OnlineRun quantum_train_online(const MlpModel& model, const TrainingSet& set, double eta,
                               double epsilon, std::size_t epochs, std::uint64_t seed,
                               Backend& backend) {
  set.validate(model);
  OnlineRun run;
  run.track = MlpTrack::fresh(model);
  Rng rng(seed);
  for (std::size_t e = 0; e < epochs; ++e) {
    for (std::size_t k = 0; k < set.d(); ++k) {
      const std::size_t t = draw_index(rng, set.d());
      OnlineStepResult r = quantum_online_step(run.track, set.samples[t], eta, epsilon, backend);
      run.order.push_back(t);
      if (r.skipped) ++run.skipped_steps;
      run.traces.push_back(std::move(r.trace));
      run.track = std::move(r.track);
    }
  }
  return run;
}

MlpModel classical_train_online(const MlpModel& model, const TrainingSet& set, double eta,
                                std::size_t epochs, std::uint64_t seed) {
  set.validate(model);
  MlpModel current = model;
  Rng rng(seed);
  for (std::size_t e = 0; e < epochs; ++e) {
    for (std::size_t k = 0; k < set.d(); ++k) {
      const MlpSample& s = set.samples[draw_index(rng, set.d())];
      current = apply_gradients(current, online_delta(current, s, classical_trace(current, s), eta));
    }
  }
  return current;
}

BatchRun classical_train_batch(const MlpModel& model, const TrainingSet& set, double eta,
                               std::size_t max_epochs, double stop_below) {
  set.validate(model);
  BatchRun run{model, 0, error_energy(model, set)};
  while (run.epochs < max_epochs && !(stop_below > 0.0 && run.final_error < stop_below)) {
    run.model = apply_gradients(run.model, classical_gradients(run.model, set, eta));
    ++run.epochs;
    run.final_error = error_energy(run.model, set);
  }
  return run;
}

double max_weight_difference(const MlpModel& a, const MlpModel& b) {
  if (a.n() != b.n() || a.m() != b.m() || a.p() != b.p()) {
    fail(ErrorCode::kDimMismatch, "models differ in shape");
  }
  double d = 0.0;
  for (std::size_t j = 0; j < a.n(); ++j) {
    for (std::size_t k = 0; k < a.m(); ++k) d = std::max(d, std::abs(a.W[j][k] - b.W[j][k]));
  }
  for (std::size_t j = 0; j < a.p(); ++j) {
    for (std::size_t k = 0; k < a.n(); ++k) d = std::max(d, std::abs(a.V[j][k] - b.V[j][k]));
  }
  return d;
}

}  // namespace qmlp
