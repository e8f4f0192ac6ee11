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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qmlp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

namespace kernels {

// Gate placement for the multiplexed kernel. Qubit 0 is the least
// significant bit of an amplitude index. Block `s` is applied to the target
// qubits on branches where the select qubits read `s` (selects[0] is bit 0 of
// s) and every control qubit matches its control value. Block rows and
// columns are indexed by the target bits, targets[0] being bit 0.
struct MultiplexLayout {
  std::vector<std::size_t> controls;
  std::vector<int> control_values;
  std::vector<std::size_t> selects;
  std::vector<std::size_t> targets;
};

// Block of the form diag + u * core * u^dagger. Grover powers and reflection
// preparations have this shape with rank at most 2, so applying them costs
// O(dim) per amplitude group instead of O(dim^2).
struct LowRankBlock {
  Eigen::VectorXcd diag;
  Matrix u;
  Matrix core;

  static LowRankBlock identity(std::size_t dim);
  std::size_t dim() const { return static_cast<std::size_t>(diag.size()); }
  bool is_identity() const;
  Matrix dense() const;
  LowRankBlock adjoint() const;
};

// Bijection on basis indices; amplitude at i moves to map(i).
using IndexMap = std::function<std::uint64_t(std::uint64_t)>;

// Amplitude count below which the parallel kernels stay single-threaded.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;

namespace parallel {

void apply_multiplexed(std::span<Complex> amps, const MultiplexLayout& layout,
                       std::span<const Matrix> blocks);
void apply_multiplexed_lowrank(std::span<Complex> amps,
                               const MultiplexLayout& layout,
                               std::span<const LowRankBlock> blocks);
void apply_index_map(std::vector<Complex>& amps, const IndexMap& map);
// Probability of each outcome of `qubits` (qubits[0] is bit 0 of the outcome).
std::vector<double> marginal(std::span<const Complex> amps,
                             std::span<const std::size_t> qubits);

}  // namespace parallel

// Straightforward out-of-place versions kept as a reference for tests and
// benchmarks.
namespace serial {

void apply_multiplexed(std::span<Complex> amps, const MultiplexLayout& layout,
                       std::span<const Matrix> blocks);
void apply_index_map(std::vector<Complex>& amps, const IndexMap& map);
std::vector<double> marginal(std::span<const Complex> amps,
                             std::span<const std::size_t> qubits);

}  // namespace serial

}  // namespace kernels
}  // namespace qmlp
