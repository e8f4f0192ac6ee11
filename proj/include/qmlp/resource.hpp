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
#include <vector>

namespace qmlp {

enum class EventKind {
  kPrep,         // calls of a preparation unitary or its inverse
  kControlledG,  // controlled applications of a Grover rotation
  kQpe,          // phase-estimation invocations (forward or inverse)
  kRotation,     // controlled-rotation or value-register writes
  kMeasurement,
};

struct LedgerEvent {
  EventKind kind = EventKind::kPrep;
  std::size_t width = 0;
  std::uint64_t count = 1;
  std::string phase;
};

struct ResourceTotals {
  std::uint64_t prep_calls = 0;
  std::uint64_t controlled_g_applications = 0;
  std::uint64_t qpe_invocations = 0;
  std::uint64_t rotations = 0;
  std::uint64_t measurements = 0;
  std::uint64_t events = 0;
  std::size_t peak_qubits = 0;

  void add(const LedgerEvent& e);
  void add(const ResourceTotals& other);
};

class ResourceLedger {
 public:
  void record(const LedgerEvent& event);
  // Appends a scalar diagnostic (for example an LCU 1-norm) under `key`.
  void note(const std::string& key, double value);
  // Combines ledgers from independent runs.
  void merge(const ResourceLedger& other);

  const ResourceTotals& totals() const { return totals_; }
  std::uint64_t prep_calls() const { return totals_.prep_calls; }
  std::uint64_t controlled_g_applications() const {
    return totals_.controlled_g_applications;
  }
  std::uint64_t qpe_invocations() const { return totals_.qpe_invocations; }
  std::size_t peak_qubits() const { return totals_.peak_qubits; }
  std::uint64_t event_count() const { return totals_.events; }
  bool empty() const { return totals_.events == 0; }

  const std::map<std::string, ResourceTotals>& phases() const { return phases_; }
  const std::map<std::string, std::vector<double>>& notes() const { return notes_; }

 private:
  ResourceTotals totals_;
  std::map<std::string, ResourceTotals> phases_;
  std::map<std::string, std::vector<double>> notes_;
};

ResourceLedger record(ResourceLedger ledger, const LedgerEvent& event);

struct ScalingRun {
  double problem_size = 0.0;
  ResourceLedger ledger;
};

struct ScalingReport {
  std::vector<double> sizes;
  std::vector<std::size_t> peak_qubits;
  std::vector<std::uint64_t> controlled_g;
  // peak_qubits[i + 1] - peak_qubits[i].
  std::vector<long long> width_deltas;
  double width_per_doubling = 0.0;
  // Least-squares slope of log(controlled_g) against log(problem_size).
  double controlled_g_slope = 0.0;
};

// Needs at least three runs whose sizes double from one run to the next.
ScalingReport scaling_report(std::span<const ScalingRun> runs);

}  // namespace qmlp
