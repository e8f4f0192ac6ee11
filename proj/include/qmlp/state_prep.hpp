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
#include <vector>

#include "qmlp/backend.hpp"
#include "qmlp/linalg.hpp"
#include "qmlp/statevector.hpp"

namespace qmlp {

// Outcome of a postselected preparation. `payload` is the normalized
// success branch and `success_amplitude` its norm before normalization.
struct PreparationResult {
  RealVector payload;
  double success_amplitude = 0.0;
  std::optional<StateVector> state;  // full simulation only
};

// (1/sqrt m) sum_j |j> [t x_j |0> + sqrt(1 - t^2 x_j^2) |1>], t = 1/max|x_j|.
// Full-state registers: "index", then "flag".
PreparationResult prepare_flagged_rotation(const ClassicalVector& x, Backend& backend);

// y = sum_j alpha_j |v_j> with signed real coefficients. Components are
// normalized on construction of the circuit.
struct LcuPlan {
  std::vector<double> coefficients;
  std::vector<RealVector> components;

  // sum_j |alpha_j|.
  double one_norm() const;
};

// S on the select register, sign_j V_j controlled on j, then S^dagger; the
// payload is the select-0 branch. Full-state registers: "data", "select".
PreparationResult lcu_combine(const LcuPlan& plan, Backend& backend);

struct DyadicDecomposition {
  std::size_t q = 0;
  // bins[j-1] holds the entries with magnitude in [2^(j-1), 2^j) * min|x|,
  // the last bin closed above. Empty bins are kept as zero vectors.
  std::vector<RealVector> bins;
  std::vector<double> lambdas;  // |y_j| / |x|
};

DyadicDecomposition dyadic_decompose(const ClassicalVector& x);

enum class PrepStrategy { kRotation, kKappa, kDyadic };

PrepStrategy parse_prep_strategy(std::string_view name);
std::string_view to_string(PrepStrategy s);

PreparationResult prepare_state(const ClassicalVector& x, PrepStrategy strategy,
                                Backend& backend);

// |<payload|x/|x|>|^2.
double payload_fidelity(const PreparationResult& r, const ClassicalVector& x);

}  // namespace qmlp
