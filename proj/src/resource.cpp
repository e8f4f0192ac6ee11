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

#include "qmlp/resource.hpp"

#include <algorithm>
#include <cmath>

#include "qmlp/error.hpp"

namespace qmlp {

void ResourceTotals::add(const LedgerEvent& e) {
  switch (e.kind) {
    case EventKind::kPrep: prep_calls += e.count; break;
    case EventKind::kControlledG: controlled_g_applications += e.count; break;
    case EventKind::kQpe: qpe_invocations += e.count; break;
    case EventKind::kRotation: rotations += e.count; break;
    case EventKind::kMeasurement: measurements += e.count; break;
  }
  ++events;
  peak_qubits = std::max(peak_qubits, e.width);
}

void ResourceTotals::add(const ResourceTotals& o) {
  prep_calls += o.prep_calls;
  controlled_g_applications += o.controlled_g_applications;
  qpe_invocations += o.qpe_invocations;
  rotations += o.rotations;
  measurements += o.measurements;
  events += o.events;
  peak_qubits = std::max(peak_qubits, o.peak_qubits);
}

void ResourceLedger::record(const LedgerEvent& event) {
  totals_.add(event);
  phases_[event.phase].add(event);
}

void ResourceLedger::note(const std::string& key, double value) {
  notes_[key].push_back(value);
}

void ResourceLedger::merge(const ResourceLedger& other) {
  totals_.add(other.totals_);
  for (const auto& [name, t] : other.phases_) phases_[name].add(t);
  for (const auto& [key, values] : other.notes_) {
    auto& dst = notes_[key];
    dst.insert(dst.end(), values.begin(), values.end());
  }
}

ResourceLedger record(ResourceLedger ledger, const LedgerEvent& event) {
  ledger.record(event);
  return ledger;
}

ScalingReport scaling_report(std::span<const ScalingRun> runs) {
  if (runs.size() < 3) {
    fail(ErrorCode::kInsufficientRuns,
         "scaling needs at least 3 runs, got " + std::to_string(runs.size()));
  }
  ScalingReport rep;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const double size = runs[i].problem_size;
    if (!(size > 0.0)) fail(ErrorCode::kInvalidArgument, "problem sizes must be positive");
    if (i > 0 && std::abs(size / runs[i - 1].problem_size - 2.0) > 1e-9) {
      fail(ErrorCode::kInvalidArgument, "problem sizes must double between runs");
    }
    rep.sizes.push_back(size);
    rep.peak_qubits.push_back(runs[i].ledger.peak_qubits());
    rep.controlled_g.push_back(runs[i].ledger.controlled_g_applications());
  }
  for (std::size_t i = 1; i < runs.size(); ++i) {
    rep.width_deltas.push_back(static_cast<long long>(rep.peak_qubits[i]) -
                               static_cast<long long>(rep.peak_qubits[i - 1]));
  }
  rep.width_per_doubling =
      (static_cast<double>(rep.peak_qubits.back()) -
       static_cast<double>(rep.peak_qubits.front())) /
      static_cast<double>(runs.size() - 1);

  const bool all_positive = std::all_of(rep.controlled_g.begin(), rep.controlled_g.end(),
                                        [](std::uint64_t g) { return g > 0; });
  if (all_positive) {
    double mx = 0, my = 0;
    const double n = static_cast<double>(runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i) {
      mx += std::log(rep.sizes[i]) / n;
      my += std::log(static_cast<double>(rep.controlled_g[i])) / n;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const double dx = std::log(rep.sizes[i]) - mx;
      sxy += dx * (std::log(static_cast<double>(rep.controlled_g[i])) - my);
      sxx += dx * dx;
    }
    rep.controlled_g_slope = sxy / sxx;
  }
  return rep;
}

}  // namespace qmlp
