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

#include "qmlp/backend.hpp"

#include "qmlp/error.hpp"

namespace qmlp {

Backend::Backend(BackendKind kind, EmulationMode mode, std::uint64_t seed)
    : kind_(kind), mode_(mode), seed_(seed), rng_(seed) {}

Backend Backend::full_statevector(std::uint64_t seed) {
  return Backend(BackendKind::kFullStatevector, EmulationMode::kSampled, seed);
}

Backend Backend::ideal(EmulationMode mode, std::uint64_t seed) {
  return Backend(BackendKind::kIdealEmulation, mode, seed);
}

Backend Backend::from_name(std::string_view name, std::uint64_t seed) {
  if (name == "full") return full_statevector(seed);
  if (name == "ideal-det") return ideal(EmulationMode::kDeterministicGrid, seed);
  if (name == "ideal-sampled") return ideal(EmulationMode::kSampled, seed);
  fail(ErrorCode::kConfigInvalid, "unknown backend '" + std::string(name) + "'");
}

std::string Backend::name() const {
  if (is_full()) return "full";
  return mode_ == EmulationMode::kDeterministicGrid ? "ideal-det" : "ideal-sampled";
}

void Backend::require_width(std::size_t width) const {
  if (is_full()) check_width(width, qubit_cap_);
}

}  // namespace qmlp
