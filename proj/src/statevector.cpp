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

#include "qmlp/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qmlp/error.hpp"

namespace qmlp {
namespace {

std::size_t arity_of(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    fail(ErrorCode::kNonUnitaryInput, "matrix must be square and nonempty");
  }
  const auto dim = static_cast<std::size_t>(m.rows());
  const std::size_t arity = index_width(dim);
  if ((std::size_t{1} << arity) != dim) {
    fail(ErrorCode::kNonUnitaryInput, "matrix dimension must be a power of two");
  }
  return arity;
}

void check_qubits(const StateVector& state, std::span<const std::size_t> qubits,
                  std::set<std::size_t>& seen, ErrorCode duplicate_code) {
  for (std::size_t q : qubits) {
    if (q >= state.num_qubits()) {
      fail(ErrorCode::kIndexOutOfRange,
           "qubit " + std::to_string(q) + " outside a " +
               std::to_string(state.num_qubits()) + "-qubit state");
    }
    if (!seen.insert(q).second) {
      fail(duplicate_code, "qubit " + std::to_string(q) + " used twice");
    }
  }
}

kernels::MultiplexLayout make_layout(std::span<const std::size_t> controls,
                                     std::span<const int> control_values,
                                     std::span<const std::size_t> selects,
                                     std::span<const std::size_t> targets) {
  kernels::MultiplexLayout layout;
  layout.controls.assign(controls.begin(), controls.end());
  layout.control_values.assign(control_values.begin(), control_values.end());
  layout.selects.assign(selects.begin(), selects.end());
  layout.targets.assign(targets.begin(), targets.end());
  return layout;
}

void validate_placement(const StateVector& state,
                        std::span<const std::size_t> controls,
                        std::span<const int> control_values,
                        std::span<const std::size_t> selects,
                        std::span<const std::size_t> targets) {
  if (controls.size() != control_values.size()) {
    fail(ErrorCode::kArityMismatch, "one control value per control qubit");
  }
  for (int v : control_values) {
    if (v != 0 && v != 1) fail(ErrorCode::kInvalidArgument, "control values are bits");
  }
  std::set<std::size_t> seen_targets;
  check_qubits(state, targets, seen_targets, ErrorCode::kDuplicateTarget);
  std::set<std::size_t> seen_other;
  check_qubits(state, controls, seen_other, ErrorCode::kDuplicateTarget);
  check_qubits(state, selects, seen_other, ErrorCode::kDuplicateTarget);
  for (std::size_t q : seen_other) {
    if (seen_targets.count(q) != 0) {
      fail(ErrorCode::kOverlapError,
           "qubit " + std::to_string(q) + " is both control and target");
    }
  }
}

}  // namespace

void check_unitary(const Matrix& m, double tolerance) {
  arity_of(m);
  const Matrix prod = m * m.adjoint();
  for (Eigen::Index r = 0; r < prod.rows(); ++r) {
    for (Eigen::Index c = 0; c < prod.cols(); ++c) {
      const Complex expect = r == c ? Complex(1.0) : Complex(0.0);
      if (std::abs(prod(r, c) - expect) > tolerance) {
        fail(ErrorCode::kNonUnitaryInput, "matrix is not unitary");
      }
    }
  }
}

kernels::LowRankBlock reflection_preparation_block(std::span<const double> a,
                                                   std::size_t dim) {
  if (dim < a.size()) fail(ErrorCode::kDimMismatch, "vector longer than target space");
  const RealVector phi = normalized(a);
  double rest = 0.0;
  for (std::size_t k = 1; k < phi.size(); ++k) rest += phi[k] * phi[k];
  const auto d = static_cast<Eigen::Index>(dim);
  kernels::LowRankBlock blk = kernels::LowRankBlock::identity(dim);
  if (rest == 0.0) {
    if (phi[0] < 0.0) blk.diag *= -1.0;
    return blk;
  }
  // Householder reflection through e0 - phi (or e0 + phi, negated), with the
  // first component written in a cancellation-free form.
  const bool flip = phi[0] < 0.0;
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(d);
  u[0] = flip ? rest / (1.0 - phi[0]) : rest / (1.0 + phi[0]);
  for (std::size_t k = 1; k < phi.size(); ++k) {
    u[static_cast<Eigen::Index>(k)] = flip ? phi[k] : -phi[k];
  }
  const double sign = flip ? -1.0 : 1.0;
  blk.diag *= sign;
  blk.u = u;
  blk.core = Matrix::Constant(1, 1, -sign * 2.0 / u.squaredNorm());
  return blk;
}

Matrix reflection_preparation(std::span<const double> a, std::size_t dim) {
  return reflection_preparation_block(a, dim).dense();
}

UnitaryOp::UnitaryOp(Matrix matrix, double tolerance)
    : matrix_(std::move(matrix)), arity_(arity_of(matrix_)) {
  check_unitary(matrix_, tolerance);
}

UnitaryOp::UnitaryOp(Matrix matrix, Unchecked)
    : matrix_(std::move(matrix)), arity_(arity_of(matrix_)) {}

UnitaryOp UnitaryOp::adjoint() const {
  return UnitaryOp(matrix_.adjoint(), Unchecked{});
}

UnitaryOp UnitaryOp::identity(std::size_t arity) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << arity);
  return UnitaryOp(Matrix::Identity(d, d), Unchecked{});
}

UnitaryOp UnitaryOp::hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  m << r, r, r, -r;
  return UnitaryOp(m, Unchecked{});
}

UnitaryOp UnitaryOp::pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return UnitaryOp(m, Unchecked{});
}

UnitaryOp UnitaryOp::z() {
  Matrix m(2, 2);
  m << -1, 0, 0, 1;
  return UnitaryOp(m, Unchecked{});
}

UnitaryOp UnitaryOp::rotation(double c, double s) {
  Matrix m(2, 2);
  m << c, -s, s, c;
  return UnitaryOp(m);
}

UnitaryOp UnitaryOp::state_preparation(std::span<const double> a) {
  const std::size_t dim = std::size_t{1} << std::max<std::size_t>(1, index_width(a.size()));
  return UnitaryOp(reflection_preparation(a, dim), Unchecked{});
}

std::vector<std::size_t> QubitRange::qubits() const {
  std::vector<std::size_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = first + i;
  return out;
}

std::uint64_t QubitRange::mask() const {
  return ((std::uint64_t{1} << count) - 1) << first;
}

std::uint64_t QubitRange::read(std::uint64_t index) const {
  return (index >> first) & ((std::uint64_t{1} << count) - 1);
}

std::uint64_t QubitRange::place(std::uint64_t value) const {
  return value << first;
}

StateVector::StateVector(std::size_t cap) : amps_(1, Complex(1.0)), cap_(cap) {}

StateVector StateVector::from_amplitudes(std::vector<Complex> amps,
                                         std::size_t cap) {
  const std::size_t n = index_width(amps.size());
  if (amps.empty() || (std::size_t{1} << n) != amps.size()) {
    fail(ErrorCode::kInvalidArgument, "amplitude count must be a power of two");
  }
  check_width(n, cap);
  StateVector s(cap);
  s.amps_ = std::move(amps);
  s.num_qubits_ = n;
  if (std::abs(s.norm() - 1.0) > 1e-10) {
    fail(ErrorCode::kInvalidArgument, "amplitudes must have unit norm");
  }
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const Complex& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

QubitRange StateVector::add_register(const std::string& name, std::size_t count) {
  check_width(num_qubits_ + count, cap_);
  QubitRange range{num_qubits_, count};
  if (count > 0) amps_.resize(amps_.size() << count, Complex(0.0));
  num_qubits_ += count;
  registers_[name] = range;
  return range;
}

void StateVector::name_register(const std::string& name, QubitRange range) {
  if (range.first + range.count > num_qubits_) {
    fail(ErrorCode::kIndexOutOfRange, "register " + name + " exceeds the state");
  }
  registers_[name] = range;
}

const QubitRange& StateVector::reg(std::string_view name) const {
  auto it = registers_.find(name);
  if (it == registers_.end()) {
    fail(ErrorCode::kInvalidArgument, "no register named " + std::string(name));
  }
  return it->second;
}

bool StateVector::has_register(std::string_view name) const {
  return registers_.find(name) != registers_.end();
}

void check_width(std::size_t num_qubits, std::size_t cap) {
  if (num_qubits > cap) {
    fail(ErrorCode::kCapExceeded, "width " + std::to_string(num_qubits) +
                                      " exceeds the qubit cap " +
                                      std::to_string(cap));
  }
}

StateVector allocate_basis(std::size_t num_qubits, std::uint64_t basis_index,
                           std::size_t cap) {
  check_width(num_qubits, cap);
  if (basis_index >= (std::uint64_t{1} << num_qubits)) {
    fail(ErrorCode::kIndexOutOfRange, "basis index " + std::to_string(basis_index) +
                                          " outside " + std::to_string(num_qubits) +
                                          " qubits");
  }
  std::vector<Complex> amps(std::size_t{1} << num_qubits, Complex(0.0));
  amps[basis_index] = 1.0;
  return StateVector::from_amplitudes(std::move(amps), cap);
}

void apply_unitary(StateVector& state, std::span<const std::size_t> targets,
                   const UnitaryOp& u) {
  apply_controlled(state, {}, {}, targets, u);
}

void apply_controlled(StateVector& state, std::span<const std::size_t> controls,
                      std::span<const int> control_values,
                      std::span<const std::size_t> targets, const UnitaryOp& u) {
  if (targets.size() != u.arity()) {
    fail(ErrorCode::kArityMismatch, "operator of arity " + std::to_string(u.arity()) +
                                        " on " + std::to_string(targets.size()) +
                                        " targets");
  }
  validate_placement(state, controls, control_values, {}, targets);
  const auto layout = make_layout(controls, control_values, {}, targets);
  kernels::parallel::apply_multiplexed(state.mutable_amplitudes(), layout,
                                       std::span<const Matrix>(&u.matrix(), 1));
}

void apply_multiplexed(StateVector& state, std::span<const std::size_t> controls,
                       std::span<const int> control_values,
                       std::span<const std::size_t> selects,
                       std::span<const std::size_t> targets,
                       std::span<const Matrix> blocks) {
  validate_placement(state, controls, control_values, selects, targets);
  const std::size_t slots = std::size_t{1} << selects.size();
  if (blocks.size() > slots) {
    fail(ErrorCode::kArityMismatch, std::to_string(blocks.size()) +
                                        " blocks for " + std::to_string(slots) +
                                        " select values");
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << targets.size());
  for (const Matrix& b : blocks) {
    if (b.rows() != dim || b.cols() != dim) {
      fail(ErrorCode::kArityMismatch, "block size does not match the targets");
    }
  }
  const auto layout = make_layout(controls, control_values, selects, targets);
  if (blocks.size() == slots) {
    kernels::parallel::apply_multiplexed(state.mutable_amplitudes(), layout, blocks);
    return;
  }
  std::vector<Matrix> padded(blocks.begin(), blocks.end());
  padded.resize(slots, Matrix::Identity(dim, dim));
  kernels::parallel::apply_multiplexed(state.mutable_amplitudes(), layout, padded);
}

void apply_multiplexed(StateVector& state, std::span<const std::size_t> controls,
                       std::span<const int> control_values,
                       std::span<const std::size_t> selects,
                       std::span<const std::size_t> targets,
                       std::span<const kernels::LowRankBlock> blocks) {
  validate_placement(state, controls, control_values, selects, targets);
  const std::size_t slots = std::size_t{1} << selects.size();
  if (blocks.size() > slots) {
    fail(ErrorCode::kArityMismatch, std::to_string(blocks.size()) +
                                        " blocks for " + std::to_string(slots) +
                                        " select values");
  }
  const std::size_t dim = std::size_t{1} << targets.size();
  for (const auto& b : blocks) {
    if (b.dim() != dim) fail(ErrorCode::kArityMismatch, "block size does not match the targets");
  }
  const auto layout = make_layout(controls, control_values, selects, targets);
  std::vector<kernels::LowRankBlock> padded(blocks.begin(), blocks.end());
  padded.resize(slots, kernels::LowRankBlock::identity(dim));
  kernels::parallel::apply_multiplexed_lowrank(state.mutable_amplitudes(), layout, padded);
}

void apply_index_map(StateVector& state, const kernels::IndexMap& map) {
  kernels::parallel::apply_index_map(state.mutable_amplitudes(), map);
}

std::vector<double> marginal_probabilities(const StateVector& state,
                                           std::span<const std::size_t> qubits) {
  std::set<std::size_t> seen;
  check_qubits(state, qubits, seen, ErrorCode::kDuplicateTarget);
  return kernels::parallel::marginal(state.amplitudes(), qubits);
}

std::uint64_t sample_outcome(std::span<const double> probabilities, Rng& rng) {
  double total = 0.0;
  for (double p : probabilities) total += p;
  const double u = uniform01(rng) * total;
  double acc = 0.0;
  std::uint64_t last = 0;
  for (std::uint64_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    acc += probabilities[i];
    last = i;
    if (u < acc) return i;
  }
  return last;
}

MeasurementRecord measure(const StateVector& state,
                          std::span<const std::size_t> qubits,
                          std::uint64_t rng_seed) {
  const std::vector<double> probs = marginal_probabilities(state, qubits);
  Rng rng(rng_seed);
  MeasurementRecord rec;
  rec.qubits.assign(qubits.begin(), qubits.end());
  rec.outcome = sample_outcome(probs, rng);
  rec.probability = probs[rec.outcome];
  for (std::size_t b = 0; b < qubits.size(); ++b) {
    rec.bits.push_back(static_cast<int>((rec.outcome >> b) & 1u));
  }
  std::uint64_t mask = 0, want = 0;
  for (std::size_t b = 0; b < qubits.size(); ++b) {
    mask |= std::uint64_t{1} << qubits[b];
    if (rec.bits[b] != 0) want |= std::uint64_t{1} << qubits[b];
  }
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  const double scale = 1.0 / std::sqrt(rec.probability);
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    amps[i] = (i & mask) == want ? amps[i] * scale : Complex(0.0);
  }
  rec.collapsed = StateVector::from_amplitudes(std::move(amps), state.cap());
  for (const auto& [name, range] : state.registers()) {
    rec.collapsed.name_register(name, range);
  }
  return rec;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) fail(ErrorCode::kDimMismatch, "states of different width");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  }
  return acc;
}

double reduced_fidelity(const StateVector& state, std::span<const Complex> reference) {
  const std::size_t k = reference.size();
  if (k == 0 || k > state.size() || state.size() % k != 0) {
    fail(ErrorCode::kDimMismatch, "reference does not fit the low qubits of the state");
  }
  double f = 0.0;
  for (std::size_t top = 0; top < state.size() / k; ++top) {
    Complex ov = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      ov += std::conj(reference[i]) * state.amplitudes()[top * k + i];
    }
    f += std::norm(ov);
  }
  return f;
}

}  // namespace qmlp
