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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmlp/kernels.hpp"
#include "qmlp/linalg.hpp"

namespace qmlp {

inline constexpr std::size_t kDefaultQubitCap = 26;

class UnitaryOp {
 public:
  // Throws NonUnitaryInput unless the matrix is square, power-of-two sized
  // and unitary within `tolerance` entrywise.
  explicit UnitaryOp(Matrix matrix, double tolerance = 1e-10);

  std::size_t arity() const { return arity_; }
  const Matrix& matrix() const { return matrix_; }
  UnitaryOp adjoint() const;

  static UnitaryOp identity(std::size_t arity);
  static UnitaryOp hadamard();
  static UnitaryOp pauli_x();
  // diag(-1, 1): maps |0> to -|0> and leaves |1> alone. This is Pauli Z up to
  // a global phase and is the convention the Grover rotation is built on.
  static UnitaryOp z();
  // [[c, -s], [s, c]] with c^2 + s^2 = 1.
  static UnitaryOp rotation(double c, double s);
  // Real reflection-based unitary whose first column is a/|a|, zero padded
  // to the next power of two (at least one qubit).
  static UnitaryOp state_preparation(std::span<const double> a);

 private:
  struct Unchecked {};
  UnitaryOp(Matrix matrix, Unchecked);

  Matrix matrix_;
  std::size_t arity_ = 0;
};

// Throws NonUnitaryInput unless |m m^dagger - I| <= tolerance entrywise.
void check_unitary(const Matrix& m, double tolerance = 1e-10);

// Real unitary of dimension `dim` (a power of two, at least a.size()) whose
// first column is a/|a|.
Matrix reflection_preparation(std::span<const double> a, std::size_t dim);

// The same unitary as reflection_preparation in diagonal plus rank-one form.
kernels::LowRankBlock reflection_preparation_block(std::span<const double> a,
                                                   std::size_t dim);

struct QubitRange {
  std::size_t first = 0;
  std::size_t count = 0;

  std::vector<std::size_t> qubits() const;
  std::uint64_t mask() const;
  std::uint64_t read(std::uint64_t index) const;
  std::uint64_t place(std::uint64_t value) const;
};

// Dense amplitude vector over little-endian qubits: qubit 0 is the least
// significant bit of the amplitude index.
class StateVector {
 public:
  // Zero qubits holding the scalar 1.
  explicit StateVector(std::size_t cap = kDefaultQubitCap);

  // Takes ownership of `amps` (length a power of two, unit norm within 1e-10).
  static StateVector from_amplitudes(std::vector<Complex> amps,
                                     std::size_t cap = kDefaultQubitCap);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::size_t cap() const { return cap_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex amplitude(std::uint64_t index) const { return amps_[index]; }
  double norm() const;

  // Appends `count` qubits in |0> above the current ones and names them.
  QubitRange add_register(const std::string& name, std::size_t count);
  // Names an existing range of qubits.
  void name_register(const std::string& name, QubitRange range);
  const QubitRange& reg(std::string_view name) const;
  bool has_register(std::string_view name) const;
  const std::map<std::string, QubitRange, std::less<>>& registers() const {
    return registers_;
  }

  // Raw access for kernels. Callers must keep the norm at 1.
  std::vector<Complex>& mutable_amplitudes() { return amps_; }

 private:
  std::vector<Complex> amps_;
  std::size_t num_qubits_ = 0;
  std::size_t cap_ = kDefaultQubitCap;
  std::map<std::string, QubitRange, std::less<>> registers_;
};

struct MeasurementRecord {
  std::vector<std::size_t> qubits;
  std::uint64_t outcome = 0;
  std::vector<int> bits;
  double probability = 0.0;
  StateVector collapsed;
};

// Throws CapExceeded if `num_qubits` exceeds `cap`.
void check_width(std::size_t num_qubits, std::size_t cap);

StateVector allocate_basis(std::size_t num_qubits, std::uint64_t basis_index,
                           std::size_t cap = kDefaultQubitCap);

void apply_unitary(StateVector& state, std::span<const std::size_t> targets,
                   const UnitaryOp& u);

void apply_controlled(StateVector& state, std::span<const std::size_t> controls,
                      std::span<const int> control_values,
                      std::span<const std::size_t> targets, const UnitaryOp& u);

// Applies blocks[s] to `targets` on branches where `selects` read s. Missing
// trailing blocks act as the identity. Only block shapes are checked, so
// callers pass matrices that are unitary by construction.
void apply_multiplexed(StateVector& state, std::span<const std::size_t> controls,
                       std::span<const int> control_values,
                       std::span<const std::size_t> selects,
                       std::span<const std::size_t> targets,
                       std::span<const Matrix> blocks);

// Same placement rules as apply_multiplexed for structured blocks.
void apply_multiplexed(StateVector& state, std::span<const std::size_t> controls,
                       std::span<const int> control_values,
                       std::span<const std::size_t> selects,
                       std::span<const std::size_t> targets,
                       std::span<const kernels::LowRankBlock> blocks);

// Permutes amplitudes by a bijection on basis indices.
void apply_index_map(StateVector& state, const kernels::IndexMap& map);

std::vector<double> marginal_probabilities(const StateVector& state,
                                           std::span<const std::size_t> qubits);

MeasurementRecord measure(const StateVector& state,
                          std::span<const std::size_t> qubits,
                          std::uint64_t rng_seed);

// Index drawn from a discrete distribution (entries need not sum to exactly 1).
std::uint64_t sample_outcome(std::span<const double> probabilities, Rng& rng);

Complex inner_product(const StateVector& a, const StateVector& b);

// <ref| rho |ref> where rho is `state` with every qubit above the reference's
// width traced out.
double reduced_fidelity(const StateVector& state, std::span<const Complex> reference);

}  // namespace qmlp
