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
#include <string>
#include <string_view>

#include "qmlp/fixed_point.hpp"
#include "qmlp/linalg.hpp"
#include "qmlp/resource.hpp"
#include "qmlp/statevector.hpp"

namespace qmlp {

enum class BackendKind { kFullStatevector, kIdealEmulation };
enum class EmulationMode { kDeterministicGrid, kSampled };

// Execution backend shared by every quantum operation: either a full circuit
// simulation or a classical mirror that reproduces the phase-estimation grid.
// Owns the random stream and the resource ledger of a run.
class Backend {
 public:
  static Backend full_statevector(std::uint64_t seed = 0);
  static Backend ideal(EmulationMode mode, std::uint64_t seed = 0);
  // Accepts "full", "ideal-det" and "ideal-sampled".
  static Backend from_name(std::string_view name, std::uint64_t seed = 0);

  BackendKind kind() const { return kind_; }
  EmulationMode mode() const { return mode_; }
  bool is_full() const { return kind_ == BackendKind::kFullStatevector; }
  bool is_deterministic() const {
    return kind_ == BackendKind::kIdealEmulation &&
           mode_ == EmulationMode::kDeterministicGrid;
  }
  std::string name() const;
  std::uint64_t seed() const { return seed_; }

  std::size_t qubit_cap() const { return qubit_cap_; }
  void set_qubit_cap(std::size_t cap) { qubit_cap_ = cap; }
  const FixedPointFormat& value_format() const { return value_format_; }
  void set_value_format(FixedPointFormat f) { value_format_ = f; }

  Rng& rng() { return rng_; }
  ResourceLedger& ledger() { return ledger_; }
  const ResourceLedger& ledger() const { return ledger_; }

  // Throws CapExceeded when a full simulation would need more than the cap.
  void require_width(std::size_t width) const;

 private:
  Backend(BackendKind kind, EmulationMode mode, std::uint64_t seed);

  BackendKind kind_;
  EmulationMode mode_;
  std::uint64_t seed_;
  std::size_t qubit_cap_ = kDefaultQubitCap;
  FixedPointFormat value_format_;
  Rng rng_;
  ResourceLedger ledger_;
};

}  // namespace qmlp
