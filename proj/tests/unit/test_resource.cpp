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

#include <gtest/gtest.h>

#include <vector>

#include "qmlp/backend.hpp"
#include "qmlp/mlp.hpp"
#include "qmlp/resource.hpp"
#include "qmlp/swap_test.hpp"
#include "test_util.hpp"

namespace qmlp {
namespace {

TEST(Ledger, PrepEventCountsOneCall) {
  const ResourceLedger l = record({}, {EventKind::kPrep, 5, 1, "p"});
  EXPECT_EQ(l.prep_calls(), 1u);
  EXPECT_GE(l.peak_qubits(), 5u);
}

TEST(Ledger, PeakIsMaximumWidth) {
  ResourceLedger l;
  l.record({EventKind::kQpe, 7, 1, "a"});
  l.record({EventKind::kQpe, 9, 1, "a"});
  EXPECT_EQ(l.peak_qubits(), 9u);
  EXPECT_EQ(l.qpe_invocations(), 2u);
}

TEST(Ledger, EmptyIsAllZero) {
  const ResourceLedger l;
  EXPECT_TRUE(l.empty());
  EXPECT_EQ(l.prep_calls(), 0u);
  EXPECT_EQ(l.controlled_g_applications(), 0u);
  EXPECT_EQ(l.qpe_invocations(), 0u);
  EXPECT_EQ(l.peak_qubits(), 0u);
  EXPECT_TRUE(l.phases().empty());
}

TEST(Ledger, CountersNeverDecrease) {
  ResourceLedger l;
  std::uint64_t last = 0;
  std::size_t peak = 0;
  for (std::size_t w : {4u, 2u, 8u, 3u}) {
    l.record({EventKind::kControlledG, w, 3, "g"});
    EXPECT_GE(l.controlled_g_applications(), last);
    EXPECT_GE(l.peak_qubits(), peak);
    last = l.controlled_g_applications();
    peak = l.peak_qubits();
  }
  EXPECT_EQ(last, 12u);
  EXPECT_EQ(peak, 8u);
}

TEST(Ledger, MergeAddsCountsAndPhases) {
  ResourceLedger a, b;
  a.record({EventKind::kPrep, 3, 2, "x"});
  b.record({EventKind::kPrep, 6, 1, "x"});
  b.record({EventKind::kMeasurement, 1, 1, "y"});
  b.note("k", 0.5);
  a.merge(b);
  EXPECT_EQ(a.prep_calls(), 3u);
  EXPECT_EQ(a.peak_qubits(), 6u);
  EXPECT_EQ(a.phases().at("x").prep_calls, 3u);
  EXPECT_EQ(a.phases().at("y").measurements, 1u);
  EXPECT_EQ(a.notes().at("k").size(), 1u);
}

TEST(Scaling, NeedsThreeRuns) {
  std::vector<ScalingRun> runs(2);
  runs[0].problem_size = 1;
  runs[1].problem_size = 2;
  EXPECT_QMLP_ERROR(scaling_report(runs), ErrorCode::kInsufficientRuns);
}

TEST(Scaling, SizesMustDouble) {
  std::vector<ScalingRun> runs(3);
  runs[0].problem_size = 1;
  runs[1].problem_size = 2;
  runs[2].problem_size = 3;
  EXPECT_QMLP_ERROR(scaling_report(runs), ErrorCode::kInvalidArgument);
}

TEST(Scaling, ConstantWidthHasZeroSlope) {
  std::vector<ScalingRun> runs;
  for (double s : {1.0, 2.0, 4.0, 8.0}) {
    ScalingRun r;
    r.problem_size = s;
    r.ledger.record({EventKind::kPrep, 5, 1, "p"});
    runs.push_back(r);
  }
  const ScalingReport rep = scaling_report(runs);
  EXPECT_DOUBLE_EQ(rep.width_per_doubling, 0.0);
  for (long long d : rep.width_deltas) EXPECT_EQ(d, 0);
}

TEST(Scaling, HiddenLayerWidthGrowsByOnePerDoubling) {
  std::vector<ScalingRun> runs;
  std::mt19937_64 rng(4);
  for (std::size_t m : {8u, 16u, 32u}) {
    // Unit-norm rows and input keep the required precision fixed across m.
    MlpModel model = MlpModel::zeros(m, 2, 1);
    for (auto& w : model.W) w = testing::random_unit_vector(m, rng);
    Backend b = Backend::ideal(EmulationMode::kDeterministicGrid);
    quantum_forward_hidden(testing::random_unit_vector(m, rng), model, 1e-2, b);
    runs.push_back({static_cast<double>(m), b.ledger()});
  }
  const ScalingReport rep = scaling_report(runs);
  ASSERT_EQ(rep.width_deltas.size(), 2u);
  EXPECT_EQ(rep.width_deltas[0], 1);
  EXPECT_EQ(rep.width_deltas[1], 1);
}

TEST(Scaling, HalvingEpsilonDoublesControlledG) {
  std::vector<ScalingRun> runs;
  const RealVector x{1, 0, 0, 0}, y{0.6, 0.8, 0, 0};
  for (double eps : {0.1, 0.05, 0.025}) {
    Backend b = Backend::ideal(EmulationMode::kDeterministicGrid);
    estimate_inner_product(x, y, eps, b);
    runs.push_back({1.0 / eps, b.ledger()});
  }
  const ScalingReport rep = scaling_report(runs);
  for (std::size_t i = 1; i < rep.controlled_g.size(); ++i) {
    const double ratio = static_cast<double>(rep.controlled_g[i]) /
                         static_cast<double>(rep.controlled_g[i - 1]);
    EXPECT_NEAR(ratio, 2.0, 0.1);
  }
  EXPECT_NEAR(rep.controlled_g_slope, 1.0, 0.05);
}

}  // namespace
}  // namespace qmlp
