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
#include <numbers>

#include "qmlp/swap_test.hpp"
#include "test_util.hpp"

namespace qmlp {
namespace {

using testing::plain_dot;
using testing::random_unit_vector;

const RealVector kE0{1.0, 0.0};
const RealVector kE1{0.0, 1.0};
const RealVector kDiag{std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};

Backend det() { return Backend::ideal(EmulationMode::kDeterministicGrid); }

// Value-register reading of a full coherent state restricted to index j:
// decoded value -> probability.
std::map<double, double> value_distribution(const CoherentResult& r, std::uint64_t j,
                                            const FixedPointFormat& fmt) {
  const StateVector& s = *r.state;
  const QubitRange index = s.reg("index");
  const QubitRange value = s.reg("value");
  std::map<double, double> out;
  for (std::uint64_t i = 0; i < s.size(); ++i) {
    if (index.read(i) != j) continue;
    out[fmt.decode(value.read(i))] += std::norm(s.amplitude(i));
  }
  return out;
}

double mass_within(const std::map<double, double>& d, double center, double tol) {
  double m = 0.0, total = 0.0;
  for (const auto& [v, p] : d) {
    total += p;
    if (std::abs(v - center) <= tol) m += p;
  }
  return m / total;
}

TEST(EstimateInnerProduct, IdenticalAndOrthogonalStates) {
  for (Backend b : {det(), Backend::ideal(EmulationMode::kSampled, 3),
                    Backend::full_statevector(5)}) {
    const RealVector x{1, 0, 0, 0};
    EXPECT_NEAR(estimate_inner_product(x, x, 0.05, b).value, 1.0, 0.05) << b.name();
    EXPECT_NEAR(estimate_inner_product(kE0, kE1, 0.05, b).value, 0.0, 0.05) << b.name();
  }
}

TEST(EstimateInnerProduct, DiagonalOverlapDeterministic) {
  Backend b = det();
  const InnerProductEstimate e = estimate_inner_product(kE0, kDiag, 0.01, b);
  EXPECT_NEAR(e.value, std::numbers::sqrt2 / 2.0, 0.01);
  EXPECT_EQ(e.n_bits, bits_for_epsilon(0.01));
  const double s = std::sin(e.phase.theta_hat);
  EXPECT_NEAR(e.value, 2.0 * s * s - 1.0, 1e-15);
}

TEST(EstimateInnerProduct, DiagonalOverlapFullCircuit) {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Backend b = Backend::full_statevector(seed);
    const InnerProductEstimate e = estimate_inner_product(kE0, kDiag, 0.01, b);
    EXPECT_LE(std::abs(e.value), 1.0 + 1e-12);
    if (std::abs(e.value - std::numbers::sqrt2 / 2.0) <= 0.01) ++hits;
  }
  // Success probability is at least 8/pi^2 per run.
  EXPECT_GE(hits, 16);
}

TEST(EstimateInnerProduct, UnnormalizedInputsAreNormalized) {
  Backend b = det();
  const RealVector x{3, 4}, y{-8, 6};
  // Orthogonal pairs sit on a grid point and read exactly zero.
  EXPECT_EQ(estimate_inner_product(x, y, 0.01, b).value, 0.0);
}

TEST(EstimateInnerProduct, Errors) {
  Backend b = det();
  EXPECT_QMLP_ERROR(estimate_inner_product(kE0, kE1, 0.0, b), ErrorCode::kInvalidArgument);
  EXPECT_QMLP_ERROR(estimate_inner_product(kE0, kE1, 0.6, b), ErrorCode::kInvalidArgument);
  const RealVector three{1, 0, 0};
  EXPECT_QMLP_ERROR(estimate_inner_product(kE0, three, 0.1, b), ErrorCode::kDimMismatch);
  const RealVector zero{0, 0};
  EXPECT_QMLP_ERROR(estimate_inner_product(kE0, zero, 0.1, b), ErrorCode::kZeroVector);
  Backend full = Backend::full_statevector();
  full.set_qubit_cap(8);
  EXPECT_QMLP_ERROR(estimate_inner_product(kE0, kE1, 0.01, full), ErrorCode::kCapExceeded);
}

TEST(EstimateInnerProduct, ComplexInputs) {
  Backend b = det();
  const std::vector<Complex> real_x{{1, 0}, {0, 0}}, real_y{{1, 0}, {1, 0}};
  EXPECT_NEAR(estimate_inner_product(std::span<const Complex>(real_x),
                                     std::span<const Complex>(real_y), 0.01, b)
                  .value,
              std::numbers::sqrt2 / 2.0, 0.01);
  const std::vector<Complex> cx{{1, 0}, {0, 1}};
  EXPECT_QMLP_ERROR(estimate_inner_product(std::span<const Complex>(cx),
                                           std::span<const Complex>(real_y), 0.1, b),
                    ErrorCode::kComplexInputUnsupported);
}

TEST(EstimateInnerProduct, ComplexRecipeThroughRealEmbeddings) {
  std::mt19937_64 rng(11);
  Backend b = det();
  for (int t = 0; t < 10; ++t) {
    const auto x = testing::random_state(3, rng);
    const auto y = testing::random_state(3, rng);
    Complex exact = 0.0;
    for (std::size_t i = 0; i < 3; ++i) exact += std::conj(x[i]) * y[i];
    const double re =
        estimate_inner_product(real_embedding(x), real_embedding(y), 0.01, b).value;
    const double im =
        estimate_inner_product(real_embedding(x), real_embedding_times_i(y), 0.01, b).value;
    EXPECT_NEAR(re, exact.real(), 0.01);
    EXPECT_NEAR(im, exact.imag(), 0.01);
  }
}

TEST(EstimateInnerProduct, LedgerCountsCircuitCalls) {
  Backend b = det();
  const InnerProductEstimate e = estimate_inner_product(kE0, kDiag, 0.1, b);
  const std::uint64_t n = std::uint64_t{1} << e.n_bits;
  EXPECT_EQ(b.ledger().prep_calls(), 2 * n - 1);
  EXPECT_EQ(b.ledger().controlled_g_applications(), n - 1);
  EXPECT_EQ(b.ledger().qpe_invocations(), 1u);
  EXPECT_EQ(b.ledger().peak_qubits(), 2 + e.n_bits);
}

TEST(CoherentInnerProduct, ConstantFunctionLeavesPairStateUntouched) {
  Backend b = Backend::full_statevector();
  const FixedPointFormat fmt{1, 6};
  b.set_value_format(fmt);
  const CoherentResult r =
      coherent_inner_product(kE0, kDiag, [](double) { return 0.25; }, 0.2, b);
  ASSERT_TRUE(r.state.has_value());
  EXPECT_NEAR(r.restoration_fidelity, 1.0, 1e-12);
  const auto d = value_distribution(r, 0, fmt);
  EXPECT_NEAR(mass_within(d, 0.25, 0.0), 1.0, 1e-12);
  // The pair register holds the swap-test state of the inputs.
  const RealVector phi = pair_state({kE0, kDiag}, 1);
  const QubitRange value = r.state->reg("value");
  for (std::size_t i = 0; i < phi.size(); ++i) {
    EXPECT_NEAR(r.state->amplitude(i | value.place(fmt.encode(0.25))).real(), phi[i], 1e-12);
  }
}

TEST(CoherentInnerProduct, IdenticalStatesWriteOne) {
  for (Backend b : {det(), Backend::full_statevector()}) {
    b.set_value_format({1, 6});
    const CoherentResult r =
        coherent_inner_product(kDiag, kDiag, [](double a) { return a; }, 0.1, b);
    EXPECT_NEAR(r.estimates[0], 1.0, 0.1);
    EXPECT_NEAR(r.values[0], 1.0, 0.1 + 1.0 / 64);
  }
}

TEST(CoherentInnerProduct, SquaredOverlapWithinLipschitzBound) {
  const double eps = 0.05;
  const auto sq = [](double a) { return a * a; };
  Backend d = det();
  d.set_value_format({1, 8});
  EXPECT_NEAR(coherent_inner_product(kE0, kDiag, sq, eps, d).values[0], 0.5,
              2 * eps + 1.0 / 256);

  Backend full = Backend::full_statevector();
  const FixedPointFormat fmt{1, 8};
  full.set_value_format(fmt);
  const CoherentResult r = coherent_inner_product(kE0, kDiag, sq, eps, full);
  EXPECT_NEAR(r.values[0], 0.5, 2 * eps + fmt.resolution());
  EXPECT_GE(mass_within(value_distribution(r, 0, fmt), 0.5, 2 * eps + fmt.resolution()),
            8.0 / (std::numbers::pi * std::numbers::pi));
  EXPECT_GT(r.restoration_fidelity, 0.0);
  EXPECT_LE(r.restoration_fidelity, 1.0 + 1e-12);
}

TEST(ParallelSwapTest, SinglePairMatchesCoherentExactly) {
  const auto f = [](double a) { return a / 2; };
  Backend b1 = Backend::full_statevector(), b2 = Backend::full_statevector();
  b1.set_value_format({1, 6});
  b2.set_value_format({1, 6});
  const CoherentResult c = coherent_inner_product(kE0, kDiag, f, 0.2, b1);
  const CoherentResult p = parallel_swap_test({{{kE0, kDiag}}, {f}}, 0.2, b2);
  ASSERT_EQ(c.state->size(), p.state->size());
  for (std::size_t i = 0; i < c.state->size(); ++i) {
    EXPECT_EQ(c.state->amplitude(i), p.state->amplitude(i));
  }
}

TEST(ParallelSwapTest, IdenticalAndOrthogonalBranches) {
  const double eps = 0.1;
  const FixedPointFormat fmt{1, 6};
  const PairBatch batch{{{kE0, kE0}, {kE0, kE1}}, {}};
  for (Backend b : {det(), Backend::full_statevector()}) {
    b.set_value_format(fmt);
    const CoherentResult r = parallel_swap_test(batch, eps, b);
    EXPECT_NEAR(r.values[0], 1.0, eps + fmt.resolution()) << b.name();
    EXPECT_NEAR(r.values[1], 0.0, eps + fmt.resolution()) << b.name();
    if (r.state) {
      // Both overlaps sit on the grid, so each branch reads one value.
      EXPECT_NEAR(mass_within(value_distribution(r, 0, fmt), 1.0, 1e-9),
                  1.0, 1e-9);
      EXPECT_NEAR(mass_within(value_distribution(r, 1, fmt), 0.0, 1e-9), 1.0, 1e-9);
    }
  }
}

TEST(ParallelSwapTest, BranchesMatchSerialEstimates) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    PairBatch batch;
    for (int j = 0; j < 4; ++j) {
      batch.pairs.push_back({random_unit_vector(4, rng), random_unit_vector(4, rng)});
    }
    for (double eps : {0.1, 0.01, 0.003}) {
      Backend pb = det();
      const CoherentResult r = parallel_swap_test(batch, eps, pb);
      for (std::size_t j = 0; j < 4; ++j) {
        Backend sb = det();
        const double s =
            estimate_inner_product(batch.pairs[j].first, batch.pairs[j].second, eps, sb).value;
        EXPECT_EQ(r.estimates[j], s);
        EXPECT_NEAR(s, plain_dot(batch.pairs[j].first, batch.pairs[j].second), eps);
      }
    }
  }
}

TEST(ParallelSwapTest, ShapeErrors) {
  Backend b = det();
  const PairBatch ragged{{{kE0, kE0}, {RealVector{1, 0, 0}, RealVector{0, 1, 0}}}, {}};
  EXPECT_QMLP_ERROR(parallel_swap_test(ragged, 0.1, b), ErrorCode::kBatchShapeMismatch);
  const auto id = [](double a) { return a; };
  const PairBatch functions{{{kE0, kE0}, {kE0, kE1}, {kE1, kE1}}, {id, id}};
  EXPECT_QMLP_ERROR(parallel_swap_test(functions, 0.1, b), ErrorCode::kBatchShapeMismatch);
  EXPECT_QMLP_ERROR(parallel_swap_test(PairBatch{}, 0.1, b), ErrorCode::kBatchShapeMismatch);
}

TEST(AmplitudesToCoefficients, IdenticalPairsGiveUniformPayload) {
  Backend b = det();
  const CoefficientResult r =
      amplitudes_to_coefficients({{{kE0, kE0}, {kE1, kE1}, {kDiag, kDiag}}, {}}, 0.05, b);
  for (double p : r.payload) EXPECT_NEAR(p, 1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(r.success_probability, 1.0, 1e-12);
}

TEST(AmplitudesToCoefficients, OrthogonalPairsGiveEmptyPayload) {
  for (Backend b : {det(), Backend::full_statevector()}) {
    const CoefficientResult r =
        amplitudes_to_coefficients({{{kE0, kE1}, {kE1, kE0}}, {}}, 0.1, b);
    for (double p : r.payload) EXPECT_NEAR(p, 0.0, 1e-9) << b.name();
    EXPECT_NEAR(r.success_probability, 0.0, 1e-9) << b.name();
  }
}

TEST(AmplitudesToCoefficients, SignedPayload) {
  const RealVector b0{0.6, 0.8}, b1{-0.8, 0.6};
  const PairBatch batch{{{kE0, b0}, {kE0, b1}}, {}};
  const double eps = 0.05;
  Backend d = det();
  const CoefficientResult r = amplitudes_to_coefficients(batch, eps, d);
  EXPECT_NEAR(r.payload[0], 0.6 / std::numbers::sqrt2, eps / std::numbers::sqrt2);
  EXPECT_NEAR(r.payload[1], -0.8 / std::numbers::sqrt2, eps / std::numbers::sqrt2);
  EXPECT_EQ(r.sign_bits, (std::vector<int>{0, 1}));

  Backend full = Backend::full_statevector();
  const CoefficientResult f = amplitudes_to_coefficients(batch, eps, full);
  EXPECT_EQ(f.sign_bits, (std::vector<int>{0, 1}));
  EXPECT_NEAR(f.coefficients[0], 0.6, eps);
  EXPECT_NEAR(f.coefficients[1], -0.8, eps);
  EXPECT_NEAR(f.payload[0], 0.6 / std::numbers::sqrt2, eps / std::numbers::sqrt2);
  EXPECT_NEAR(f.payload[1], -0.8 / std::numbers::sqrt2, eps / std::numbers::sqrt2);
}

TEST(AmplitudesToCoefficients, RejectsCoefficientsAboveOne) {
  Backend b = det();
  const PairBatch batch{{{kE0, kE0}}, {[](double a) { return 2 * a; }}};
  EXPECT_QMLP_ERROR(amplitudes_to_coefficients(batch, 0.1, b), ErrorCode::kInvalidArgument);
}

TEST(AmplitudeQuery, BasisAndUniformStates) {
  const auto id = [](double a) { return a; };
  for (Backend b : {det(), Backend::full_statevector()}) {
    b.set_value_format({1, 6});
    EXPECT_NEAR(amplitude_query(kE0, id, 0.1, b).values[0], 1.0, 0.1 + 1.0 / 64);
  }
  Backend d = det();
  const CoherentResult u = amplitude_query(RealVector(4, 0.5), id, 0.05, d);
  for (double v : u.values) EXPECT_NEAR(v, 0.5, 0.05 + 1.0 / (1 << 16));
}

TEST(AmplitudeQuery, SquaredAmplitudes) {
  const auto sq = [](double a) { return a * a; };
  const double eps = 0.05;
  Backend d = det();
  const CoherentResult r = amplitude_query(RealVector{0.6, 0.8}, sq, eps, d);
  EXPECT_NEAR(r.values[0], 0.36, 2 * eps);
  EXPECT_NEAR(r.values[1], 0.64, 2 * eps);

  Backend full = Backend::full_statevector();
  const FixedPointFormat fmt{1, 6};
  full.set_value_format(fmt);
  const CoherentResult f = amplitude_query(RealVector{0.6, 0.8}, sq, 0.1, full);
  EXPECT_NEAR(f.values[0], 0.36, 0.2 + fmt.resolution());
  EXPECT_NEAR(f.values[1], 0.64, 0.2 + fmt.resolution());
  // Index weights follow the amplitudes.
  double w0 = 0.0;
  for (const auto& [v, p] : value_distribution(f, 0, fmt)) w0 += p;
  EXPECT_NEAR(w0, 0.36, 1e-9);
}

TEST(SwapTestProperties, SampledEmulationMatchesFullDistribution) {
  std::mt19937_64 rng(5);
  for (int set = 0; set < 20; ++set) {
    const std::size_t dim = 2 + set % 3;
    const RealVector x = random_unit_vector(dim, rng), y = random_unit_vector(dim, rng);
    const std::size_t bits = 3 + set % 3;
    const RealVector phi = pair_state({x, y}, index_width(dim));
    const std::vector<double> exact = simulate_qpe_distribution(
        grover_from_state(phi),
        StateVector::from_amplitudes(std::vector<Complex>(phi.begin(), phi.end())), bits);
    Backend b = Backend::ideal(EmulationMode::kSampled, 100 + set);
    std::vector<double> hist(exact.size(), 0.0);
    const int shots = 10000;
    for (int s = 0; s < shots; ++s) {
      hist[emulate_overlap(plain_dot(x, y), bits, b).grid_index] += 1.0 / shots;
    }
    double tv = 0.0;
    for (std::size_t k = 0; k < exact.size(); ++k) tv += std::abs(hist[k] - exact[k]) / 2;
    EXPECT_LE(tv, 0.02) << "set " << set;
  }
}

TEST(SwapTestProperties, HalvingEpsilonNeverIncreasesError) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t dim = 2 + t % 7;
    const RealVector x = random_unit_vector(dim, rng), y = random_unit_vector(dim, rng);
    const double exact = plain_dot(x, y);
    double prev = 2.0;
    for (double eps = 0.5; eps > 1e-4; eps /= 2) {
      Backend b = det();
      const double err = std::abs(estimate_inner_product(x, y, eps, b).value - exact);
      EXPECT_LE(err, prev + 1e-15);
      EXPECT_LE(err, eps);
      prev = err;
    }
  }
}

TEST(SwapTestProperties, SignOfClearOverlapsIsCorrect) {
  std::mt19937_64 rng(13);
  const double eps = 0.05;
  Backend d = det();
  Backend s = Backend::ideal(EmulationMode::kSampled, 17);
  int checked = 0, sampled_right = 0;
  for (int t = 0; t < 200; ++t) {
    const RealVector x = random_unit_vector(3, rng), y = random_unit_vector(3, rng);
    const double exact = plain_dot(x, y);
    if (std::abs(exact) <= 2 * eps) continue;
    ++checked;
    EXPECT_EQ(std::signbit(estimate_inner_product(x, y, eps, d).value), std::signbit(exact));
    if (std::signbit(estimate_inner_product(x, y, eps, s).value) == std::signbit(exact)) {
      ++sampled_right;
    }
  }
  EXPECT_GT(checked, 100);
  // A sampled run is within eps/2 whenever it lands on one of the two nearest
  // grid points, which happens with probability at least 8/pi^2.
  EXPECT_GE(sampled_right, 8.0 / (std::numbers::pi * std::numbers::pi) * checked);
}

}  // namespace
}  // namespace qmlp
