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
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "qmlp/backend.hpp"
#include "qmlp/linalg.hpp"
#include "qmlp/statevector.hpp"

namespace qmlp {

// P x N matrix whose rows u_i are stored patterns and whose columns v_j are
// the per-neuron histories.
struct PatternMatrix {
  std::vector<RealVector> rows;
  bool discrete = true;  // entries in {-1, +1}

  std::size_t P() const { return rows.size(); }
  std::size_t N() const { return rows.empty() ? 0 : rows.front().size(); }
  RealVector column(std::size_t j) const;
  double frobenius() const;
  // Throws DimMismatch for ragged rows and InvalidArgument for P < 1, N < 2
  // or a non +-1 entry in a discrete matrix.
  void validate() const;
};

// Symmetric N x N weights with a zero diagonal.
struct HopfieldWeights {
  std::vector<RealVector> W;

  std::size_t N() const { return W.size(); }
  RealVector column(std::size_t j) const;
  double frobenius() const;
  double max_abs() const;
  // Throws InvalidArgument unless square, symmetric within 1e-12 and zero on
  // the diagonal.
  void validate() const;
};

// w_ij = v_i . v_j / P off the diagonal, 0 on it.
HopfieldWeights hebb_classical(const PatternMatrix& X);

// (1/|X|_F) sum_ij x_ij |i, j>, j in the low bits. Read by rows it is
// (1/|X|_F) sum_i |u_i| |i, u_i>, by columns (1/|X|_F) sum_j |v_j| |v_j, j>.
struct PatternState {
  RealVector amplitudes;  // index j + pad(N) * i
  std::size_t row_qubits = 0;
  std::size_t column_qubits = 0;
  std::optional<StateVector> state;  // registers "column", "row"
};

// Throws ZeroMatrix for a zero pattern matrix.
PatternState pattern_state(const PatternMatrix& X, Backend& backend);

struct HebbResult {
  HopfieldWeights weights;
  double epsilon = 0.0;
  std::size_t n_bits = 0;  // final precision stage
  // Tagged overlaps q_ij = P w_ij / |X|_F^2 of the (i, j) branches, i < j.
  std::vector<double> overlaps;
  // s = 1 / max |w^_ij| and the amplitude factor min(1, P / |X|_F).
  double scale = 0.0;
  double amplitude_factor = 0.0;
  // Flag-0 amplitudes c s w^_ij / N at index i + N j, and their norm
  // c s |W^|_F / N.
  RealVector payload;
  double payload_norm = 0.0;
  // DegenerateScale: every estimate is zero, so s is undefined and W = 0.
  bool degenerate_scale = false;
  std::optional<StateVector> state;
};

// Quantum Hebb rule with |w^_ij - w_ij| <= epsilon max |w_ij|. The full
// backend simulates the tagged state and the final flagged state; the
// overlaps are read as measured phase estimates.
HebbResult hebb_quantum(const PatternMatrix& X, double epsilon, Backend& backend);

enum class Activation { kThreshold, kSigmoid };
// Accepts "threshold" and "sigmoid"; throws ConfigInvalid otherwise.
Activation parse_activation(std::string_view name);
std::string_view to_string(Activation a);

// x_ij <- phi(u_i . w_j).
PatternMatrix recall_classical(const PatternMatrix& X, const HopfieldWeights& W,
                               Activation activation);

struct RecallResult {
  PatternMatrix X;
  std::vector<RealVector> fields;  // estimated u_i . w_j
  // Threshold entries whose field lies within 2 epsilon |u_i| |w_j| of zero
  // (AmbiguousSign); they take the <= 0 value.
  std::vector<std::pair<std::size_t, std::size_t>> ambiguous;
  std::size_t n_bits = 0;
};

// Parallel swap test over the (i, j) branches of (|0>|X> + |1>|W>)/sqrt 2
// after tagging; |field - u_i . w_j| <= epsilon |u_i| |w_j|.
RecallResult recall_step(const PatternMatrix& X, const HopfieldWeights& W,
                         Activation activation, double epsilon, Backend& backend);

}  // namespace qmlp
