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

#include "qmlp/phase_estimation.hpp"

#include <cmath>
#include <numbers>

#include "qmlp/error.hpp"

namespace qmlp {
namespace {

constexpr double kPi = std::numbers::pi;

void apply_phase(StateVector& state, std::size_t control, std::size_t target,
                 double angle) {
  Matrix m = Matrix::Identity(2, 2);
  m(1, 1) = std::polar(1.0, angle);
  const std::size_t c[] = {control};
  const int v[] = {1};
  const std::size_t t[] = {target};
  apply_controlled(state, c, v, t, UnitaryOp(m));
}

void apply_hadamards(StateVector& state, std::span<const std::size_t> qubits) {
  const UnitaryOp h = UnitaryOp::hadamard();
  for (std::size_t q : qubits) {
    const std::size_t t[] = {q};
    apply_unitary(state, t, h);
  }
}

void reverse_bits(StateVector& state, std::span<const std::size_t> qubits) {
  const std::vector<std::size_t> q(qubits.begin(), qubits.end());
  apply_index_map(state, [q](std::uint64_t i) {
    std::uint64_t out = i;
    const std::size_t n = q.size();
    for (std::size_t b = 0; b < n; ++b) {
      const std::uint64_t bit = (i >> q[n - 1 - b]) & 1u;
      out = (out & ~(std::uint64_t{1} << q[b])) | (bit << q[b]);
    }
    return out;
  });
}

void apply_powers(StateVector& state, const QpeLayout& layout,
                  std::span<const GroverRotation> rotations, std::size_t b,
                  bool inverse) {
  std::vector<kernels::LowRankBlock> blocks;
  blocks.reserve(rotations.size());
  const std::int64_t k = std::int64_t{1} << b;
  for (const GroverRotation& g : rotations) {
    blocks.push_back(g.power_block(inverse ? -k : k));
  }
  const std::size_t c[] = {layout.phase[b]};
  const int v[] = {1};
  apply_multiplexed(state, c, v, layout.selects, layout.targets, blocks);
}

}  // namespace

std::size_t bits_for_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    fail(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  const double l = std::log2(kPi / epsilon);
  const double c = std::ceil(l - 1e-12);
  return static_cast<std::size_t>(std::max(0.0, c)) + 2;
}

GroverRotation::GroverRotation(std::vector<Complex> phi, std::optional<UnitaryOp> prep)
    : phi_(std::move(phi)), prep_(std::move(prep)) {
  const std::size_t dim = phi_.size();
  arity_ = index_width(dim);
  if (dim < 2 || (std::size_t{1} << arity_) != dim) {
    fail(ErrorCode::kArityMismatch, "Grover rotation needs a power-of-two state of at least 2 entries");
  }
  double n2 = 0.0;
  for (const Complex& a : phi_) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > 1e-10) {
    fail(ErrorCode::kNonUnitaryInput, "prepared state is not normalized");
  }
  const std::size_t half = dim / 2;
  const auto d = static_cast<Eigen::Index>(dim);
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    s0 += std::norm(phi_[i]);
    s1 += std::norm(phi_[i + half]);
  }
  s0 = std::sqrt(s0);
  s1 = std::sqrt(s1);
  theta_ = std::atan2(s0, s1);
  e0_ = Eigen::VectorXcd::Zero(d);
  e1_ = Eigen::VectorXcd::Zero(d);
  has_e0_ = s0 > 0.0;
  has_e1_ = s1 > 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    if (has_e0_) e0_[static_cast<Eigen::Index>(i)] = phi_[i] / s0;
    if (has_e1_) e1_[static_cast<Eigen::Index>(i + half)] = phi_[i + half] / s1;
  }
}

kernels::LowRankBlock GroverRotation::power_block(std::int64_t k) const {
  const std::size_t dim = phi_.size();
  const std::size_t half = dim / 2;
  const double z1 = (k % 2 == 0) ? 1.0 : -1.0;
  kernels::LowRankBlock blk = kernels::LowRankBlock::identity(dim);
  for (std::size_t i = half; i < dim; ++i) blk.diag[static_cast<Eigen::Index>(i)] = z1;
  const double angle = 2.0 * static_cast<double>(k) * theta_;
  const double c = std::cos(angle), s = std::sin(angle);
  const auto d = static_cast<Eigen::Index>(dim);
  if (has_e0_ && has_e1_) {
    blk.u = Matrix(d, 2);
    blk.u.col(0) = e0_;
    blk.u.col(1) = e1_;
    blk.core = Matrix(2, 2);
    blk.core << c - 1.0, s, -s, c - z1;
  } else if (has_e0_) {
    blk.u = e0_;
    blk.core = Matrix::Constant(1, 1, c - 1.0);
  } else {
    blk.u = e1_;
    blk.core = Matrix::Constant(1, 1, c - z1);
  }
  return blk;
}

UnitaryOp GroverRotation::composed() const { return UnitaryOp(power(1)); }

GroverRotation build_grover_rotation(const UnitaryOp& prep) {
  check_unitary(prep.matrix());
  const Matrix& m = prep.matrix();
  std::vector<Complex> phi(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) phi[static_cast<std::size_t>(r)] = m(r, 0);
  return GroverRotation(std::move(phi), prep);
}

Matrix grover_matrix(const UnitaryOp& prep) {
  const Matrix& u = prep.matrix();
  const Eigen::Index d = u.rows();
  Matrix reflect = -Matrix::Identity(d, d);
  reflect(0, 0) = 1.0;
  Matrix z = Matrix::Identity(d, d);
  for (Eigen::Index i = 0; i < d / 2; ++i) z(i, i) = -1.0;
  return u * reflect * u.adjoint() * z;
}

GroverRotation grover_from_state(std::span<const double> phi) {
  std::vector<Complex> c(phi.begin(), phi.end());
  return GroverRotation(std::move(c), std::nullopt);
}

std::uint64_t fold_grid_index(std::uint64_t y, std::size_t bits) {
  const std::uint64_t n = std::uint64_t{1} << bits;
  y %= n;
  return std::min(y, (n - y) % n);
}

double grid_angle(std::uint64_t y, std::size_t bits) {
  return static_cast<double>(y) * kPi / std::ldexp(1.0, static_cast<int>(bits));
}

PhaseEstimate make_estimate(std::uint64_t y, std::size_t bits, EstimateMode mode) {
  PhaseEstimate e;
  e.grid_index = y;
  e.bits = bits;
  e.theta_hat = grid_angle(fold_grid_index(y, bits), bits);
  e.mode = mode;
  return e;
}

double qpe_probability(double fraction, std::uint64_t y, std::size_t bits) {
  const double n = std::ldexp(1.0, static_cast<int>(bits));
  double d = n * fraction - static_cast<double>(y);
  d -= n * std::round(d / n);
  if (d == 0.0) return 1.0;
  const double num = std::sin(kPi * d);
  const double den = n * std::sin(kPi * d / n);
  return (num * num) / (den * den);
}

std::vector<double> qpe_distribution(double theta, std::size_t bits) {
  const std::uint64_t n = std::uint64_t{1} << bits;
  std::vector<double> p(n);
  const double f = theta / kPi;
  for (std::uint64_t y = 0; y < n; ++y) {
    p[y] = 0.5 * qpe_probability(f, y, bits) + 0.5 * qpe_probability(-f, y, bits);
  }
  return p;
}

std::uint64_t sample_qpe(double theta, std::size_t bits, Rng& rng) {
  const auto n = static_cast<std::int64_t>(std::int64_t{1} << bits);
  const double f = (uniform01(rng) < 0.5 ? 1.0 : -1.0) * theta / kPi;
  const auto center = static_cast<std::int64_t>(std::llround(f * static_cast<double>(n)));
  const double u = uniform01(rng);
  double acc = 0.0;
  auto wrap = [n](std::int64_t y) { return static_cast<std::uint64_t>(((y % n) + n) % n); };
  // Walk outward from the nearest grid point: offsets 0, 1, -1, 2, -2, ...
  constexpr std::int64_t kMaxWalk = std::int64_t{1} << 21;
  const std::int64_t steps = std::min(n, kMaxWalk);
  for (std::int64_t j = 0; j < steps; ++j) {
    const std::int64_t k = (j % 2 == 1) ? (j + 1) / 2 : -(j / 2);
    const std::uint64_t y = wrap(center + k);
    acc += qpe_probability(f, y, bits);
    if (u < acc) return y;
  }
  if (steps == n) return wrap(center);
  // Far tail on a fine grid: p(k) ~ sin^2(pi d) / (pi k)^2 on each side, so
  // the two-sided mass beyond K is a (1/K - 1/k) with a = 2 sin^2(pi d)/pi^2.
  const double d = f * static_cast<double>(n) - static_cast<double>(center);
  const double a = 2.0 * std::pow(std::sin(kPi * d), 2) / (kPi * kPi);
  const double big_k = static_cast<double>(steps / 2);
  const double inv = 1.0 / big_k - (u - acc) / std::max(a, 1e-300);
  const double half = static_cast<double>(n / 2);
  const double k = inv > 1.0 / half ? 1.0 / inv : half;
  const auto off = static_cast<std::int64_t>(k);
  return wrap(center + (uniform01(rng) < 0.5 ? off : -off));
}

PhaseEstimate emulate_qpe(double theta, std::size_t bits, EstimateMode mode, Rng& rng) {
  if (mode == EstimateMode::kDeterministicGrid) {
    const double n = std::ldexp(1.0, static_cast<int>(bits));
    const auto y = static_cast<std::uint64_t>(std::llround(theta * n / kPi)) %
                   (std::uint64_t{1} << bits);
    return make_estimate(y, bits, mode);
  }
  return make_estimate(sample_qpe(theta, bits, rng), bits, mode);
}

void apply_qft(StateVector& state, std::span<const std::size_t> q) {
  const std::size_t n = q.size();
  for (std::size_t jj = n; jj-- > 0;) {
    const std::size_t t[] = {q[jj]};
    apply_unitary(state, t, UnitaryOp::hadamard());
    for (std::size_t m = jj; m-- > 0;) {
      apply_phase(state, q[m], q[jj], kPi / std::ldexp(1.0, static_cast<int>(jj - m)));
    }
  }
  reverse_bits(state, q);
}

void apply_inverse_qft(StateVector& state, std::span<const std::size_t> q) {
  reverse_bits(state, q);
  for (std::size_t j = 0; j < q.size(); ++j) {
    for (std::size_t m = 0; m < j; ++m) {
      apply_phase(state, q[m], q[j], -kPi / std::ldexp(1.0, static_cast<int>(j - m)));
    }
    const std::size_t t[] = {q[j]};
    apply_unitary(state, t, UnitaryOp::hadamard());
  }
}

void apply_qpe(StateVector& state, const QpeLayout& layout,
               std::span<const GroverRotation> rotations) {
  apply_hadamards(state, layout.phase);
  for (std::size_t b = 0; b < layout.phase.size(); ++b) {
    apply_powers(state, layout, rotations, b, false);
  }
  apply_inverse_qft(state, layout.phase);
}

void apply_inverse_qpe(StateVector& state, const QpeLayout& layout,
                       std::span<const GroverRotation> rotations) {
  apply_qft(state, layout.phase);
  for (std::size_t b = layout.phase.size(); b-- > 0;) {
    apply_powers(state, layout, rotations, b, true);
  }
  apply_hadamards(state, layout.phase);
}

namespace {

StateVector prepare_qpe_state(const GroverRotation& g, const StateVector& target,
                              std::size_t n_bits, QpeLayout& layout) {
  if (target.num_qubits() != g.arity()) {
    fail(ErrorCode::kArityMismatch, "target state width differs from the rotation arity");
  }
  StateVector s = target;
  s.name_register("target", QubitRange{0, g.arity()});
  layout.phase = s.add_register("phase", n_bits).qubits();
  layout.targets = QubitRange{0, g.arity()}.qubits();
  apply_qpe(s, layout, std::span<const GroverRotation>(&g, 1));
  return s;
}

}  // namespace

PhaseEstimate run_qpe(const GroverRotation& g, const StateVector& target,
                      std::size_t n_bits, std::uint64_t rng_seed) {
  QpeLayout layout;
  const StateVector s = prepare_qpe_state(g, target, n_bits, layout);
  const std::vector<double> p = marginal_probabilities(s, layout.phase);
  Rng rng(rng_seed);
  return make_estimate(sample_outcome(p, rng), n_bits, EstimateMode::kSampled);
}

std::vector<double> simulate_qpe_distribution(const GroverRotation& g,
                                              const StateVector& target,
                                              std::size_t n_bits) {
  QpeLayout layout;
  const StateVector s = prepare_qpe_state(g, target, n_bits, layout);
  return marginal_probabilities(s, layout.phase);
}

StateVector coherent_write(const GroverRotation& g, const StateVector& target,
                           const AngleFunction& f, std::size_t n_bits,
                           const FixedPointFormat& format) {
  if (target.num_qubits() != g.arity()) {
    fail(ErrorCode::kArityMismatch, "target state width differs from the rotation arity");
  }
  const std::uint64_t grid = std::uint64_t{1} << n_bits;
  std::vector<std::uint64_t> codes(grid);
  for (std::uint64_t y = 0; y < grid; ++y) {
    codes[y] = format.encode(f(grid_angle(fold_grid_index(y, n_bits), n_bits)));
  }
  check_width(target.num_qubits() + n_bits + format.width(), target.cap());
  StateVector s = target;
  s.name_register("target", QubitRange{0, g.arity()});
  QpeLayout layout;
  const QubitRange phase = s.add_register("phase", n_bits);
  const QubitRange value = s.add_register("value", format.width());
  layout.phase = phase.qubits();
  layout.targets = QubitRange{0, g.arity()}.qubits();
  const std::span<const GroverRotation> rot(&g, 1);
  apply_qpe(s, layout, rot);
  apply_index_map(s, [&](std::uint64_t i) {
    return i ^ value.place(codes[phase.read(i)]);
  });
  apply_inverse_qpe(s, layout, rot);
  return s;
}

}  // namespace qmlp
