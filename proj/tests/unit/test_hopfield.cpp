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

#include <cmath>
#include <random>

#include "qmlp/hopfield.hpp"
#include "test_util.hpp"

namespace qmlp {
namespace {

Backend det() { return Backend::ideal(EmulationMode::kDeterministicGrid); }

PatternMatrix random_patterns(std::size_t P, std::size_t N, std::mt19937_64& rng) {
  PatternMatrix X;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < P; ++i) {
    RealVector r(N);
    for (double& a : r) a = coin(rng) ? 1.0 : -1.0;
    X.rows.push_back(r);
  }
  return X;
}

const PatternMatrix kSmall{{{1, 1, -1}, {1, -1, -1}}, true};

TEST(HebbClassical, Examples) {
  const HopfieldWeights ones = hebb_classical({{{1, 1, 1, 1}}, true});
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(ones.W[i][j], i == j ? 0.0 : 1.0);
  }
  const HopfieldWeights ortho = hebb_classical({{{1, 1}, {1, -1}}, true});
  EXPECT_EQ(ortho.W[0][1], 0.0);
  const HopfieldWeights w = hebb_classical(kSmall);
  EXPECT_EQ(w.W[0][1], 0.0);
  EXPECT_EQ(w.W[0][2], -1.0);
  EXPECT_EQ(w.W[1][2], 0.0);
  w.validate();
}

TEST(HebbClassical, Validation) {
  EXPECT_QMLP_ERROR(hebb_classical({{{1, 2}}, true}), ErrorCode::kInvalidArgument);
  EXPECT_QMLP_ERROR(hebb_classical({{{1}}, true}), ErrorCode::kInvalidArgument);
  EXPECT_QMLP_ERROR(hebb_classical({{{1, 1}, {1}}, true}), ErrorCode::kDimMismatch);
}

TEST(PatternState, Examples) {
  Backend b = Backend::full_statevector();
  const PatternState one = pattern_state({{{0, 0}, {0, 3}}, false}, b);
  EXPECT_EQ(one.amplitudes, (RealVector{0, 0, 0, 1}));
  const PatternState all = pattern_state({{{1, 1}, {1, 1}}, true}, b);
  for (double a : all.amplitudes) EXPECT_NEAR(a, 0.5, 1e-15);
  ASSERT_TRUE(all.state.has_value());
  for (const auto& a : all.state->amplitudes()) EXPECT_NEAR(a.real(), 0.5, 1e-12);
  EXPECT_QMLP_ERROR(pattern_state({{{0, 0}}, false}, b), ErrorCode::kZeroMatrix);
}

TEST(PatternState, RandomMatrixAndReshapes) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  PatternMatrix X{{}, false};
  for (int i = 0; i < 2; ++i) X.rows.push_back({g(rng), g(rng), g(rng), g(rng)});
  Backend b = Backend::full_statevector();
  const PatternState s = pattern_state(X, b);
  const double f = X.frobenius();
  for (std::size_t i = 0; i < 2; ++i) {
    const double nu = norm(X.rows[i]);
    for (std::size_t j = 0; j < 4; ++j) {
      const double a = s.state->amplitude(j + 4 * i).real();
      EXPECT_NEAR(a, X.rows[i][j] / f, 1e-10);
      // Row reading |u_i| |i, u_i> and column reading |v_j| |v_j, j>.
      EXPECT_NEAR(a, nu / f * (X.rows[i][j] / nu), 1e-12);
      const RealVector v = X.column(j);
      EXPECT_NEAR(a, norm(v) / f * (v[i] / norm(v)), 1e-12);
    }
  }
}

TEST(HebbQuantum, OrthogonalColumnsDegenerate) {
  Backend b = det();
  const HebbResult r = hebb_quantum({{{1, 1}, {1, -1}}, true}, 1e-3, b);
  EXPECT_TRUE(r.degenerate_scale);
  EXPECT_EQ(r.weights.max_abs(), 0.0);
  EXPECT_EQ(r.payload_norm, 0.0);
}

TEST(HebbQuantum, SmallExample) {
  for (double eps : {1e-2, 1e-4}) {
    Backend b = det();
    const HebbResult r = hebb_quantum(kSmall, eps, b);
    r.weights.validate();
    EXPECT_NEAR(r.weights.W[0][2], -1.0, eps);
    EXPECT_NEAR(r.weights.W[0][1], 0.0, eps);
    EXPECT_NEAR(r.weights.W[1][2], 0.0, eps);
    // Payload concentrated on the (0, 2) and (2, 0) entries.
    EXPECT_NEAR(r.payload[0 + 3 * 2], -r.amplitude_factor / 3.0, 1e-12);
    EXPECT_NEAR(std::abs(r.payload[1 + 3 * 0]), 0.0, eps);
  }
}

TEST(HebbQuantum, RandomPatternsWithinRelativeBound) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<std::size_t> pd(1, 4), nd(2, 8);
    const PatternMatrix X = random_patterns(pd(rng), nd(rng), rng);
    const HopfieldWeights w = hebb_classical(X);
    Backend b = det();
    const HebbResult r = hebb_quantum(X, 1e-3, b);
    r.weights.validate();
    double err = 0.0;
    for (std::size_t i = 0; i < X.N(); ++i) {
      for (std::size_t j = 0; j < X.N(); ++j) err = std::max(err, std::abs(r.weights.W[i][j] - w.W[i][j]));
    }
    EXPECT_LE(err, 1e-3 * w.max_abs()) << trial;
    EXPECT_EQ(r.degenerate_scale, w.max_abs() == 0.0);
  }
}

TEST(HebbQuantum, FullPayloadNormIdentity) {
  std::mt19937_64 rng(4);
  int checked = 0;
  while (checked < 5) {
    const PatternMatrix X = random_patterns(2, 4, rng);
    const HopfieldWeights w = hebb_classical(X);
    if (w.max_abs() == 0.0) continue;
    Backend b = Backend::full_statevector(checked);
    const HebbResult r = hebb_quantum(X, 1e-10, b);
    ASSERT_TRUE(r.state.has_value());
    const double s = 1.0 / w.max_abs();
    const double expected = 2.0 * s * w.frobenius() / (4.0 * X.frobenius());
    EXPECT_NEAR(r.payload_norm, expected, 1e-6);
    // The tagged-branch overlaps read off the simulated state.
    std::size_t t = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j, ++t) {
        EXPECT_NEAR(r.overlaps[t], 2.0 * w.W[i][j] / 8.0, 1e-12);
      }
    }
    ++checked;
  }
}

TEST(Recall, StoredPatternIsFixedPoint) {
  const PatternMatrix X{{{1, -1, -1, 1, 1}}, true};
  const HopfieldWeights w = hebb_classical(X);
  EXPECT_EQ(recall_classical(X, w, Activation::kThreshold).rows, X.rows);
  Backend b = det();
  const RecallResult r = recall_step(X, w, Activation::kThreshold, 1e-3, b);
  EXPECT_EQ(r.X.rows, X.rows);
  EXPECT_TRUE(r.ambiguous.empty());
  Backend full = Backend::full_statevector(1);
  full.set_value_format({1, 6});
  const PatternMatrix small{{{1, -1}}, true};
  EXPECT_EQ(recall_step(small, hebb_classical(small), Activation::kThreshold, 0.25, full).X.rows,
            small.rows);
}

TEST(Recall, ZeroWeightsGiveMinusOne) {
  const HopfieldWeights zero{{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}};
  Backend b = det();
  const RecallResult r = recall_step(kSmall, zero, Activation::kThreshold, 1e-3, b);
  for (const auto& row : r.X.rows) EXPECT_EQ(row, (RealVector{-1, -1, -1}));
  EXPECT_FALSE(b.ledger().empty());
}

TEST(Recall, QuantumMatchesClassical) {
  const HopfieldWeights w = hebb_classical(kSmall);
  Backend b = det();
  const RecallResult r = recall_step(kSmall, w, Activation::kThreshold, 1e-4, b);
  const PatternMatrix c = recall_classical(kSmall, w, Activation::kThreshold);
  for (std::size_t i = 0; i < kSmall.P(); ++i) {
    for (std::size_t j = 0; j < kSmall.N(); ++j) {
      const double exact = testing::plain_dot(kSmall.rows[i], w.column(j));
      if (std::abs(exact) > 2e-4 * norm(kSmall.rows[i]) * norm(w.column(j))) {
        EXPECT_EQ(r.X.rows[i][j], c.rows[i][j]);
      }
      EXPECT_LE(std::abs(r.fields[i][j] - exact), 1e-4 * norm(kSmall.rows[i]) * norm(w.column(j)) + 1e-15);
    }
  }
}

TEST(Recall, SigmoidMode) {
  const PatternMatrix X{{{0.5, -0.2, 0.9}}, false};
  const HopfieldWeights w{{{0, 0.3, -0.4}, {0.3, 0, 0.8}, {-0.4, 0.8, 0}}};
  Backend b = det();
  const RecallResult r = recall_step(X, w, Activation::kSigmoid, 1e-4, b);
  const PatternMatrix c = recall_classical(X, w, Activation::kSigmoid);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(r.X.rows[0][j], c.rows[0][j], 1e-4);
  EXPECT_QMLP_ERROR(parse_activation("relu"), ErrorCode::kConfigInvalid);
}

TEST(Recall, NearZeroFieldIsFlagged) {
  // Column 1 of W is orthogonal to the row, so its field is exactly zero.
  const PatternMatrix X{{{1, 1, 1}}, true};
  const HopfieldWeights w{{{0, 1, 0}, {1, 0, -1}, {0, -1, 0}}};
  Backend b = det();
  const RecallResult r = recall_step(X, w, Activation::kThreshold, 1e-3, b);
  ASSERT_EQ(r.ambiguous.size(), 1u);
  EXPECT_EQ(r.ambiguous[0], (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_EQ(r.X.rows[0][1], -1.0);
}

}  // namespace
}  // namespace qmlp
