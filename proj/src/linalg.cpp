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

#include "qmlp/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "qmlp/error.hpp"

namespace qmlp {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    fail(ErrorCode::kDimMismatch, "dot of vectors with sizes " +
                                      std::to_string(a.size()) + " and " +
                                      std::to_string(b.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

RealVector normalized(std::span<const double> a) {
  const double n = norm(a);
  if (n == 0.0) fail(ErrorCode::kZeroVector, "cannot normalize a zero vector");
  RealVector out(a.begin(), a.end());
  for (double& v : out) v /= n;
  return out;
}

std::size_t index_width(std::size_t dim) {
  std::size_t w = 0;
  while ((std::size_t{1} << w) < dim) ++w;
  return w;
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t draw_index(Rng& rng, std::size_t n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "draw_index over empty range");
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
}

ClassicalVector::ClassicalVector(RealVector entries)
    : entries_(std::move(entries)) {
  for (double v : entries_) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::kInvalidArgument, "vector entries must be finite");
    }
  }
  norm_ = qmlp::norm(entries_);
}

std::size_t ClassicalVector::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(),
                    [](double v) { return v != 0.0; }));
}

double ClassicalVector::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

double ClassicalVector::min_abs_nonzero() const {
  double m = 0.0;
  for (double v : entries_) {
    const double a = std::abs(v);
    if (a != 0.0 && (m == 0.0 || a < m)) m = a;
  }
  return m;
}

double ClassicalVector::kappa() const {
  if (is_zero()) fail(ErrorCode::kZeroVector, "kappa of a zero vector");
  return max_abs() / min_abs_nonzero();
}

}  // namespace qmlp
