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

#include "qmlp/state_prep.hpp"

#include <algorithm>
#include <cmath>

#include "qmlp/error.hpp"
#include "qmlp/resource.hpp"

namespace qmlp {
namespace {

void require_nonzero(const ClassicalVector& x) {
  if (x.is_zero()) fail(ErrorCode::kZeroVector, "cannot prepare the zero vector");
}

RealVector scaled(const RealVector& v, double f) {
  RealVector out(v);
  for (double& a : out) a *= f;
  return out;
}

// Reads the branch where every qubit outside `keep` is zero, truncated to
// `len` entries.
RealVector branch(const StateVector& s, const QubitRange& keep, std::size_t len) {
  RealVector out(len);
  for (std::size_t j = 0; j < len; ++j) out[j] = s.amplitude(keep.place(j)).real();
  return out;
}

PreparationResult finish(RealVector branch_amps, std::optional<StateVector> state) {
  PreparationResult r;
  r.success_amplitude = norm(branch_amps);
  r.payload = r.success_amplitude > 0.0 ? scaled(branch_amps, 1.0 / r.success_amplitude)
                                        : branch_amps;
  r.state = std::move(state);
  return r;
}

}  // namespace

PreparationResult prepare_flagged_rotation(const ClassicalVector& x, Backend& backend) {
  require_nonzero(x);
  const std::size_t m = x.size();
  const std::size_t k = index_width(m);
  const double t = 1.0 / x.max_abs();
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  backend.require_width(k + 1);
  ResourceLedger& l = backend.ledger();
  l.record({EventKind::kPrep, k + 1, 1, "state_prep"});
  l.record({EventKind::kRotation, k + 1, 1, "state_prep"});

  RealVector flag0(m);
  for (std::size_t j = 0; j < m; ++j) flag0[j] = t * x[j] * inv_sqrt_m;
  if (!backend.is_full()) return finish(std::move(flag0), std::nullopt);

  StateVector s(backend.qubit_cap());
  const QubitRange index = s.add_register("index", k);
  const QubitRange flag = s.add_register("flag", 1);
  if (k > 0) {
    const std::vector<kernels::LowRankBlock> uni{
        reflection_preparation_block(RealVector(m, 1.0), std::size_t{1} << k)};
    apply_multiplexed(s, {}, {}, {}, index.qubits(), uni);
  }
  std::vector<Matrix> rot;
  for (std::size_t j = 0; j < m; ++j) {
    const double c = std::clamp(t * x[j], -1.0, 1.0);
    rot.push_back(UnitaryOp::rotation(c, std::sqrt(1.0 - c * c)).matrix());
  }
  apply_multiplexed(s, {}, {}, index.qubits(), flag.qubits(), rot);
  RealVector out = branch(s, index, m);
  return finish(std::move(out), std::move(s));
}

double LcuPlan::one_norm() const {
  double s = 0.0;
  for (double a : coefficients) s += std::abs(a);
  return s;
}

PreparationResult lcu_combine(const LcuPlan& plan, Backend& backend) {
  if (plan.coefficients.empty()) fail(ErrorCode::kEmptyPlan, "no terms to combine");
  if (plan.coefficients.size() != plan.components.size()) {
    fail(ErrorCode::kInvalidArgument, "coefficient and component counts differ");
  }
  const std::size_t dim = plan.components.front().size();
  std::vector<RealVector> v;
  for (std::size_t j = 0; j < plan.components.size(); ++j) {
    if (plan.components[j].size() != dim) fail(ErrorCode::kDimMismatch, "component widths differ");
    if (!(plan.coefficients[j] != 0.0 && std::isfinite(plan.coefficients[j]))) {
      fail(ErrorCode::kInvalidArgument, "LCU coefficients must be finite and nonzero");
    }
    v.push_back(normalized(plan.components[j]));
  }
  const double s = plan.one_norm();
  RealVector y(dim, 0.0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) y[i] += plan.coefficients[j] * v[j][i];
  }
  if (norm(y) <= 1e-12 * s) fail(ErrorCode::kCancellationFailure, "terms cancel exactly");

  const std::size_t d = index_width(dim);
  const std::size_t k = index_width(v.size());
  backend.require_width(d + k);
  ResourceLedger& l = backend.ledger();
  l.record({EventKind::kPrep, d + k, 3, "lcu"});
  l.note("lcu_one_norm", s);
  l.note("lcu_success_amplitude", norm(y) / s);
  if (!backend.is_full()) return finish(scaled(y, 1.0 / s), std::nullopt);

  StateVector st(backend.qubit_cap());
  const QubitRange data = st.add_register("data", d);
  const QubitRange select = st.add_register("select", k);
  RealVector weights;
  for (double a : plan.coefficients) weights.push_back(std::sqrt(std::abs(a)));
  const std::vector<kernels::LowRankBlock> sel{
      reflection_preparation_block(weights, std::size_t{1} << k)};
  if (k > 0) apply_multiplexed(st, {}, {}, {}, select.qubits(), sel);
  std::vector<Matrix> comps;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double sign = plan.coefficients[j] < 0.0 ? -1.0 : 1.0;
    comps.push_back(sign * reflection_preparation(v[j], std::size_t{1} << d));
  }
  apply_multiplexed(st, {}, {}, select.qubits(), data.qubits(), comps);
  if (k > 0) {
    const std::vector<kernels::LowRankBlock> unsel{sel.front().adjoint()};
    apply_multiplexed(st, {}, {}, {}, select.qubits(), unsel);
  }
  RealVector out = branch(st, data, dim);
  return finish(std::move(out), std::move(st));
}

DyadicDecomposition dyadic_decompose(const ClassicalVector& x) {
  require_nonzero(x);
  const double lo = x.min_abs_nonzero();
  const double hi = x.max_abs();
  DyadicDecomposition d;
  d.q = 1;
  while (std::ldexp(lo, static_cast<int>(d.q)) < hi) ++d.q;
  d.bins.assign(d.q, RealVector(x.size(), 0.0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    if (a == 0.0) continue;
    std::size_t j = 1;
    while (j < d.q && a >= std::ldexp(lo, static_cast<int>(j))) ++j;
    d.bins[j - 1][i] = x[i];
  }
  for (const RealVector& b : d.bins) d.lambdas.push_back(norm(b) / x.norm());
  return d;
}

PrepStrategy parse_prep_strategy(std::string_view name) {
  if (name == "rotation") return PrepStrategy::kRotation;
  if (name == "kappa") return PrepStrategy::kKappa;
  if (name == "dyadic") return PrepStrategy::kDyadic;
  fail(ErrorCode::kConfigInvalid, "unknown preparation strategy '" + std::string(name) + "'");
}

std::string_view to_string(PrepStrategy s) {
  switch (s) {
    case PrepStrategy::kRotation: return "rotation";
    case PrepStrategy::kKappa: return "kappa";
    case PrepStrategy::kDyadic: return "dyadic";
  }
  return "unknown";
}

PreparationResult prepare_state(const ClassicalVector& x, PrepStrategy strategy,
                                Backend& backend) {
  require_nonzero(x);
  ResourceLedger& l = backend.ledger();
  switch (strategy) {
    case PrepStrategy::kRotation: {
      PreparationResult r = prepare_flagged_rotation(x, backend);
      l.note("prep_success_amplitude", r.success_amplitude);
      return r;
    }
    case PrepStrategy::kKappa: {
      // Basis-state components over the nonzero entries.
      LcuPlan plan;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) continue;
        RealVector e(x.size(), 0.0);
        e[i] = 1.0;
        plan.coefficients.push_back(x[i]);
        plan.components.push_back(std::move(e));
      }
      PreparationResult r = lcu_combine(plan, backend);
      l.note("prep_success_amplitude", r.success_amplitude);
      return r;
    }
    case PrepStrategy::kDyadic: {
      const DyadicDecomposition d = dyadic_decompose(x);
      LcuPlan plan;
      for (std::size_t j = 0; j < d.q; ++j) {
        if (d.lambdas[j] == 0.0) continue;
        plan.coefficients.push_back(d.lambdas[j]);
        plan.components.push_back(d.bins[j]);
        // Each bin is itself a ratio-2 basis-state combination.
        const auto terms = static_cast<std::size_t>(std::count_if(
            d.bins[j].begin(), d.bins[j].end(), [](double a) { return a != 0.0; }));
        l.record({EventKind::kPrep, index_width(x.size()) + index_width(terms), 3,
                  "dyadic_bin"});
      }
      double lambda_sum = 0.0;
      for (double lam : d.lambdas) lambda_sum += lam;
      l.note("dyadic_bins", static_cast<double>(d.q));
      l.note("dyadic_lambda_sum", lambda_sum);
      PreparationResult r = lcu_combine(plan, backend);
      l.note("prep_success_amplitude", r.success_amplitude);
      return r;
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown preparation strategy");
}

double payload_fidelity(const PreparationResult& r, const ClassicalVector& x) {
  const double o = dot(r.payload, x.entries()) / x.norm();
  return o * o;
}

}  // namespace qmlp
