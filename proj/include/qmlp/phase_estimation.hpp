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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qmlp/fixed_point.hpp"
#include "qmlp/kernels.hpp"
#include "qmlp/linalg.hpp"
#include "qmlp/statevector.hpp"

namespace qmlp {

// Phase-register width for a target precision: ceil(log2(pi / epsilon)) + 2.
std::size_t bits_for_epsilon(double epsilon);

// G = U (2|0><0| - I) U^dagger (Z (x) I), with Z = diag(-1, 1) acting on the
// most significant qubit of U's register (the control qubit). Writing
// U|0> = sin(theta)|0>|u> + cos(theta)|1>|v>, G rotates span{|0>|u>, |1>|v>}
// by 2 theta and acts as -(Z (x) I) on the complement, which gives powers in
// closed form.
class GroverRotation {
 public:
  // `phi` is U|0>; `prep` is stored when known.
  GroverRotation(std::vector<Complex> phi, std::optional<UnitaryOp> prep);

  std::size_t arity() const { return arity_; }
  const std::optional<UnitaryOp>& prep() const { return prep_; }
  const std::vector<Complex>& phi() const { return phi_; }
  // The latent angle in [0, pi/2].
  double theta() const { return theta_; }
  // G^k as diagonal plus rank-two; k may be negative.
  kernels::LowRankBlock power_block(std::int64_t k) const;
  Matrix power(std::int64_t k) const { return power_block(k).dense(); }
  UnitaryOp composed() const;

 private:
  std::vector<Complex> phi_;
  std::optional<UnitaryOp> prep_;
  std::size_t arity_ = 0;
  double theta_ = 0.0;
  Eigen::VectorXcd e0_, e1_;
  bool has_e0_ = false, has_e1_ = false;
};

// Literal construction U (2|0><0| - I) U^dagger (Z (x) I) for a given U.
// Throws NonUnitaryInput.
GroverRotation build_grover_rotation(const UnitaryOp& prep);
// Dense matrix of the same product, for checking the closed form.
Matrix grover_matrix(const UnitaryOp& prep);
// Rotation for a real target state |phi> without forming U.
GroverRotation grover_from_state(std::span<const double> phi);

enum class EstimateMode { kDeterministicGrid, kSampled };

struct PhaseEstimate {
  std::uint64_t grid_index = 0;  // raw register value y in [0, 2^bits)
  std::size_t bits = 0;
  // min(y, 2^bits - y) * pi / 2^bits, in [0, pi/2]; the fold of the two
  // eigenphases +-2 theta.
  double theta_hat = 0.0;
  EstimateMode mode = EstimateMode::kSampled;
};

std::uint64_t fold_grid_index(std::uint64_t y, std::size_t bits);
double grid_angle(std::uint64_t y, std::size_t bits);
PhaseEstimate make_estimate(std::uint64_t y, std::size_t bits, EstimateMode mode);

// Probability of reading y when the eigenphase is 2 pi * fraction.
double qpe_probability(double fraction, std::uint64_t y, std::size_t bits);
// Exact outcome distribution for the state U|0>: the equal mixture of the
// eigenphases +-2 theta.
std::vector<double> qpe_distribution(double theta, std::size_t bits);
// Draws y from that distribution without tabulating all 2^bits outcomes.
std::uint64_t sample_qpe(double theta, std::size_t bits, Rng& rng);
// Nearest grid point in theta (deterministic mode) or a sample.
PhaseEstimate emulate_qpe(double theta, std::size_t bits, EstimateMode mode, Rng& rng);

// Register placement for phase estimation. rotations[s] acts on `targets`
// when `selects` read s; missing trailing rotations act as the identity.
struct QpeLayout {
  std::vector<std::size_t> phase;
  std::vector<std::size_t> targets;
  std::vector<std::size_t> selects;
};

void apply_qft(StateVector& state, std::span<const std::size_t> qubits);
void apply_inverse_qft(StateVector& state, std::span<const std::size_t> qubits);
// Phase register must start in |0...0>.
void apply_qpe(StateVector& state, const QpeLayout& layout,
               std::span<const GroverRotation> rotations);
void apply_inverse_qpe(StateVector& state, const QpeLayout& layout,
                       std::span<const GroverRotation> rotations);

// `target` holds U|0> on g.arity() qubits; a phase register is appended.
PhaseEstimate run_qpe(const GroverRotation& g, const StateVector& target,
                      std::size_t n_bits, std::uint64_t rng_seed);
// Outcome distribution of the simulated circuit.
std::vector<double> simulate_qpe_distribution(const GroverRotation& g,
                                              const StateVector& target,
                                              std::size_t n_bits);

using AngleFunction = std::function<double(double)>;

// QPE, XOR of the fixed-point code of f(theta_hat) into a fresh value
// register, inverse QPE. Registers of the result: "target", "phase", "value".
StateVector coherent_write(const GroverRotation& g, const StateVector& target,
                           const AngleFunction& f, std::size_t n_bits,
                           const FixedPointFormat& format = {});

}  // namespace qmlp
