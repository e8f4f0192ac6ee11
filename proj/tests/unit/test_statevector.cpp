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
#include <numeric>

#include "qmlp/statevector.hpp"
#include "test_util.hpp"

namespace qmlp {
namespace {

using testing::random_state;
using testing::random_unitary;

void expect_amplitudes(const StateVector& s, const std::vector<Complex>& want,
                       double tol = 1e-12) {
  ASSERT_EQ(s.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(std::abs(s.amplitude(i) - want[i]), 0.0, tol) << "index " << i;
  }
}

TEST(AllocateBasis, SingleQubitZero) {
  expect_amplitudes(allocate_basis(1, 0), {1.0, 0.0});
}

TEST(AllocateBasis, TwoQubitsEleven) {
  expect_amplitudes(allocate_basis(2, 3), {0.0, 0.0, 0.0, 1.0});
}

TEST(AllocateBasis, Errors) {
  EXPECT_QMLP_ERROR(allocate_basis(27, 0), ErrorCode::kCapExceeded);
  EXPECT_QMLP_ERROR(allocate_basis(2, 4), ErrorCode::kIndexOutOfRange);
  EXPECT_NO_THROW(allocate_basis(3, 0, 3));
  EXPECT_QMLP_ERROR(allocate_basis(4, 0, 3), ErrorCode::kCapExceeded);
}

TEST(ApplyUnitary, HadamardOnZero) {
  StateVector s = allocate_basis(1, 0);
  const std::size_t t[] = {0};
  apply_unitary(s, t, UnitaryOp::hadamard());
  const double r = 1.0 / std::sqrt(2.0);
  expect_amplitudes(s, {r, r});
}

TEST(ApplyUnitary, ZFlipsZero) {
  StateVector s = allocate_basis(1, 0);
  const std::size_t t[] = {0};
  apply_unitary(s, t, UnitaryOp::z());
  expect_amplitudes(s, {-1.0, 0.0}, 0.0);
  StateVector one = allocate_basis(1, 1);
  apply_unitary(one, t, UnitaryOp::z());
  expect_amplitudes(one, {0.0, 1.0}, 0.0);
}

TEST(ApplyUnitary, IdentityIsBitExact) {
  std::mt19937_64 rng(3);
  StateVector s = StateVector::from_amplitudes(random_state(8, rng));
  const StateVector before = s;
  const std::size_t t[] = {0, 2};
  apply_unitary(s, t, UnitaryOp::identity(2));
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s.amplitude(i), before.amplitude(i));
  }
}

TEST(ApplyUnitary, LittleEndianOrdering) {
  StateVector s = allocate_basis(3, 0);
  const std::size_t t[] = {2};
  apply_unitary(s, t, UnitaryOp::pauli_x());
  EXPECT_EQ(s.amplitude(4), Complex(1.0));
  // Two-qubit operator: targets[0] is the low bit of the matrix index.
  Matrix m = Matrix::Zero(4, 4);
  m(1, 0) = 1.0;
  m(0, 1) = 1.0;
  m(2, 2) = 1.0;
  m(3, 3) = 1.0;
  StateVector b = allocate_basis(3, 0);
  const std::size_t t2[] = {1, 2};
  apply_unitary(b, t2, UnitaryOp(m));
  EXPECT_EQ(b.amplitude(2), Complex(1.0));
}

TEST(ApplyUnitary, Errors) {
  StateVector s = allocate_basis(2, 0);
  const std::size_t one[] = {0};
  const std::size_t dup[] = {1, 1};
  const std::size_t far[] = {5};
  EXPECT_QMLP_ERROR(apply_unitary(s, one, UnitaryOp::identity(2)),
                    ErrorCode::kArityMismatch);
  EXPECT_QMLP_ERROR(apply_unitary(s, dup, UnitaryOp::identity(2)),
                    ErrorCode::kDuplicateTarget);
  EXPECT_QMLP_ERROR(apply_unitary(s, far, UnitaryOp::hadamard()),
                    ErrorCode::kIndexOutOfRange);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = 0.5;
  EXPECT_QMLP_ERROR(UnitaryOp{bad}, ErrorCode::kNonUnitaryInput);
  EXPECT_QMLP_ERROR(UnitaryOp{Matrix::Identity(3, 3)}, ErrorCode::kNonUnitaryInput);
}

TEST(ApplyControlled, CnotOnTen) {
  // Control qubit 1 set, target qubit 0 clear: |q1 q0> = |10>.
  StateVector s = allocate_basis(2, 2);
  const std::size_t c[] = {1};
  const int v1[] = {1};
  const std::size_t t[] = {0};
  apply_controlled(s, c, v1, t, UnitaryOp::pauli_x());
  expect_amplitudes(s, {0.0, 0.0, 0.0, 1.0}, 0.0);
}

TEST(ApplyControlled, ZeroConditionedNotSatisfied) {
  StateVector s = allocate_basis(2, 2);
  const std::size_t c[] = {1};
  const int v0[] = {0};
  const std::size_t t[] = {0};
  apply_controlled(s, c, v0, t, UnitaryOp::pauli_x());
  expect_amplitudes(s, {0.0, 0.0, 1.0, 0.0}, 0.0);
}

TEST(ApplyControlled, OverlapRejected) {
  StateVector s = allocate_basis(2, 0);
  const std::size_t c[] = {0};
  const int v[] = {1};
  const std::size_t t[] = {0};
  EXPECT_QMLP_ERROR(apply_controlled(s, c, v, t, UnitaryOp::pauli_x()),
                    ErrorCode::kOverlapError);
}

TEST(ApplyControlled, MultiplexedRotationsMatchAmplitudeTable) {
  // Index register (qubits 1, 2) in uniform superposition, flag qubit 0.
  const double angles[] = {0.1, 0.7, 1.3, 2.9};
  StateVector s = allocate_basis(3, 0);
  const std::size_t idx0[] = {1};
  const std::size_t idx1[] = {2};
  apply_unitary(s, idx0, UnitaryOp::hadamard());
  apply_unitary(s, idx1, UnitaryOp::hadamard());
  std::vector<Matrix> blocks;
  for (double a : angles) blocks.push_back(UnitaryOp::rotation(std::cos(a), std::sin(a)).matrix());
  const std::size_t selects[] = {1, 2};
  const std::size_t flag[] = {0};
  apply_multiplexed(s, {}, {}, selects, flag, blocks);
  std::vector<Complex> want(8);
  for (std::size_t j = 0; j < 4; ++j) {
    want[2 * j] = 0.5 * std::cos(angles[j]);
    want[2 * j + 1] = 0.5 * std::sin(angles[j]);
  }
  expect_amplitudes(s, want);
}

TEST(Measure, DeterministicState) {
  const StateVector s = allocate_basis(1, 0);
  const std::size_t q[] = {0};
  const MeasurementRecord rec = measure(s, q, 11);
  EXPECT_EQ(rec.outcome, 0u);
  EXPECT_DOUBLE_EQ(rec.probability, 1.0);
}

TEST(Measure, PlusStateFrequencies) {
  StateVector s = allocate_basis(1, 0);
  const std::size_t q[] = {0};
  apply_unitary(s, q, UnitaryOp::hadamard());
  int zeros = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    if (measure(s, q, seed).outcome == 0) ++zeros;
  }
  EXPECT_GE(zeros, 4800);
  EXPECT_LE(zeros, 5200);
}

TEST(Measure, ProbabilityMatchesProjectedNorm) {
  std::mt19937_64 rng(5);
  const StateVector s = StateVector::from_amplitudes(random_state(16, rng));
  const std::size_t q[] = {1, 3};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MeasurementRecord rec = measure(s, q, seed);
    double projected = 0.0;
    for (std::uint64_t i = 0; i < 16; ++i) {
      const std::uint64_t bits = ((i >> 1) & 1u) | (((i >> 3) & 1u) << 1);
      if (bits == rec.outcome) projected += std::norm(s.amplitude(i));
    }
    EXPECT_NEAR(rec.probability, projected, 1e-12);
    EXPECT_NEAR(rec.collapsed.norm(), 1.0, 1e-12);
  }
}

TEST(Measure, BornRuleWithinThreeSigma) {
  std::mt19937_64 rng(8);
  const StateVector s = StateVector::from_amplitudes(random_state(8, rng));
  const std::size_t q[] = {0, 1, 2};
  const int shots = 20000;
  std::vector<int> counts(8, 0);
  Rng draw(99);
  const std::vector<double> p = marginal_probabilities(s, q);
  for (int k = 0; k < shots; ++k) ++counts[sample_outcome(p, draw)];
  for (std::size_t i = 0; i < 8; ++i) {
    const double pi = std::norm(s.amplitude(i));
    const double sigma = std::sqrt(pi * (1 - pi) / shots);
    EXPECT_NEAR(counts[i] / static_cast<double>(shots), pi, 3 * sigma + 1e-12);
  }
}

TEST(Properties, NormPreservation) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 8;
    StateVector s = StateVector::from_amplitudes(random_state(std::size_t{1} << n, rng));
    const std::size_t arity = 1 + (trial / 8) % std::min<std::size_t>(n, 3);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(arity);
    apply_unitary(s, all, UnitaryOp(random_unitary(std::size_t{1} << arity, rng)));
    EXPECT_LT(std::abs(s.norm() - 1.0), 1e-10);
  }
}

TEST(Properties, Composition) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    StateVector s = StateVector::from_amplitudes(random_state(32, rng));
    const StateVector before = s;
    const UnitaryOp u(random_unitary(4, rng));
    const std::size_t t[] = {4, 1};
    apply_unitary(s, t, u);
    apply_unitary(s, t, u.adjoint());
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_LT(std::abs(s.amplitude(i) - before.amplitude(i)), 1e-10);
    }
  }
}

TEST(StatePreparation, FirstColumnIsTheVector) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t dim : {1u, 2u, 3u, 5u, 8u, 16u}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> a(dim);
      for (double& v : a) v = u(rng);
      if (trial == 0) {
        std::fill(a.begin(), a.end(), 0.0);
        a[0] = -2.0;
      }
      if (trial == 1 && dim > 1) a[0] = 1e9;
      const UnitaryOp prep = UnitaryOp::state_preparation(a);
      double n = 0.0;
      for (double v : a) n += v * v;
      n = std::sqrt(n);
      for (std::size_t k = 0; k < prep.matrix().rows(); ++k) {
        const double want = k < dim ? a[k] / n : 0.0;
        EXPECT_NEAR(prep.matrix()(static_cast<Eigen::Index>(k), 0).real(), want, 1e-14);
      }
      EXPECT_NO_THROW(check_unitary(prep.matrix(), 1e-12));
    }
  }
}

TEST(Registers, AddRegisterKeepsContents) {
  StateVector s = allocate_basis(1, 1);
  const QubitRange r = s.add_register("phase", 2);
  EXPECT_EQ(r.first, 1u);
  EXPECT_EQ(s.num_qubits(), 3u);
  EXPECT_EQ(s.amplitude(1), Complex(1.0));
  EXPECT_EQ(s.reg("phase").count, 2u);
  EXPECT_EQ(r.read(0b101), 2u);
  EXPECT_QMLP_ERROR(s.add_register("big", 24), ErrorCode::kCapExceeded);
}

TEST(Kernels, ParallelMatchesSerialMultiplexed) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 14;
    const auto amps0 = random_state(std::size_t{1} << n, rng);
    std::vector<std::size_t> q(n);
    std::iota(q.begin(), q.end(), 0);
    std::shuffle(q.begin(), q.end(), rng);
    kernels::MultiplexLayout layout;
    const std::size_t nt = 1 + trial % 3, ns = trial % 3, nc = trial % 2;
    layout.targets.assign(q.begin(), q.begin() + nt);
    layout.selects.assign(q.begin() + nt, q.begin() + nt + ns);
    layout.controls.assign(q.begin() + nt + ns, q.begin() + nt + ns + nc);
    layout.control_values.assign(nc, 1);
    std::vector<Matrix> blocks;
    for (std::size_t s = 0; s < (std::size_t{1} << ns); ++s) {
      blocks.push_back(random_unitary(std::size_t{1} << nt, rng));
    }
    std::vector<Complex> a = amps0, b = amps0;
    kernels::parallel::apply_multiplexed(a, layout, blocks);
    kernels::serial::apply_multiplexed(b, layout, blocks);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT(std::abs(a[i] - b[i]), 1e-12);
    const std::vector<std::size_t> mq(q.begin() + 2, q.begin() + 6);
    const auto pa = kernels::parallel::marginal(a, mq);
    const auto pb = kernels::serial::marginal(b, mq);
    for (std::size_t o = 0; o < pa.size(); ++o) EXPECT_NEAR(pa[o], pb[o], 1e-12);
  }
}

TEST(Kernels, IndexMapMovesAmplitudes) {
  std::mt19937_64 rng(4);
  const auto amps = random_state(64, rng);
  const kernels::IndexMap m = [](std::uint64_t i) { return i ^ ((i & 3u) << 4); };
  std::vector<Complex> a = amps, b = amps;
  kernels::parallel::apply_index_map(a, m);
  kernels::serial::apply_index_map(b, m);
  for (std::uint64_t i = 0; i < 64; ++i) {
    EXPECT_EQ(a[m(i)], amps[i]);
    EXPECT_EQ(a[i], b[i]);
  }
}

}  // namespace
}  // namespace qmlp
