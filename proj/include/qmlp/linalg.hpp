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
#include <random>
#include <span>
#include <vector>

namespace qmlp {

using RealVector = std::vector<double>;
using Rng = std::mt19937_64;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
RealVector normalized(std::span<const double> a);

// Number of qubits needed to index `dim` basis states (0 for dim <= 1).
std::size_t index_width(std::size_t dim);

// Uniform double in [0, 1) with 53 random bits. Independent of the
// standard library's distribution implementations, so streams are portable.
double uniform01(Rng& rng);

// Uniform integer in [0, n).
std::size_t draw_index(Rng& rng, std::size_t n);

// Real vector with a cached L2 norm.
class ClassicalVector {
 public:
  ClassicalVector() = default;
  explicit ClassicalVector(RealVector entries);

  const RealVector& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double norm() const { return norm_; }
  double operator[](std::size_t i) const { return entries_[i]; }
  bool is_zero() const { return norm_ == 0.0; }
  std::size_t nonzero_count() const;
  double max_abs() const;
  // Smallest nonzero magnitude; 0 for the zero vector.
  double min_abs_nonzero() const;
  // max |x_k| / min nonzero |x_k|.
  double kappa() const;

 private:
  RealVector entries_;
  double norm_ = 0.0;
};

}  // namespace qmlp
