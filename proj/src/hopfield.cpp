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

#include "qmlp/hopfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmlp/error.hpp"
#include "qmlp/phase_estimation.hpp"
#include "qmlp/resource.hpp"
#include "qmlp/swap_test.hpp"

namespace qmlp {
namespace {

std::size_t padded(std::size_t dim) { return std::size_t{1} << index_width(dim); }

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    fail(ErrorCode::kInvalidArgument, "epsilon must lie in (0, 0.5]");
  }
}

// Counts of one parallel swap test over `branches` pairs, uncomputed when
// `coherent` (two QPE passes), measured otherwise.
void record_swap(Backend& backend, std::size_t bits, std::size_t width, bool coherent,
                 const std::string& phase) {
  const std::uint64_t g = (std::uint64_t{1} << bits) - 1;
  const std::uint64_t passes = coherent ? 2 : 1;
  ResourceLedger& l = backend.ledger();
  l.record({EventKind::kPrep, width, 1 + 2 * passes * g, phase});
  l.record({EventKind::kControlledG, width, passes * g, phase});
  l.record({EventKind::kQpe, width, passes, phase});
  if (coherent) {
    l.record({EventKind::kRotation, width, 1, phase});
  } else {
    l.record({EventKind::kMeasurement, width, 1, phase});
  }
}

struct Estimates {
  std::vector<double> values;
  std::size_t bits = 0;
  bool degenerate = false;
};

// Estimates every overlap to within epsilon * max |q|. A coarse pass halves
// its precision until the largest estimate clears twice the precision; its
// reading minus the precision is a lower bound on max |q| that fixes the
// final precision.
Estimates adaptive_estimates(const std::vector<double>& q, double epsilon, std::size_t width,
                             Backend& backend) {
  Estimates out;
  double coarse = 0.25;
  double largest = 0.0;
  for (;;) {
    const std::size_t bits = bits_for_epsilon(coarse);
    record_swap(backend, bits, width + bits, false, "hebb_scale");
    largest = 0.0;
    for (double v : q) {
      largest = std::max(largest, std::abs(overlap_from_phase(emulate_overlap(v, bits, backend))));
    }
    if (largest > 2.0 * coarse) break;
    if (coarse < 1e-13) {
      out.degenerate = true;
      out.values.assign(q.size(), 0.0);
      out.bits = bits;
      return out;
    }
    coarse /= 2.0;
  }
  const double fine = std::min(0.5, epsilon * (largest - coarse));
  out.bits = bits_for_epsilon(fine);
  record_swap(backend, out.bits, width + out.bits, true, "hebb");
  for (double v : q) out.values.push_back(overlap_from_phase(emulate_overlap(v, out.bits, backend)));
  return out;
}

// Registers of the tagged construction, low to high.
struct HebbLayout {
  QubitRange col, row, copy, tag, ctrl, i, j;
};

// Tags each half of sum_ij |i,j>|ctrl>|X>: ctrl 0 marks column k = i with
// tag 1 (else 0) and copies j; ctrl 1 marks k = j with tag 1 (else 2) and
// copies i. XOR writes keep the map a bijection.
std::uint64_t tag_map(const HebbLayout& L, std::uint64_t x) {
  const std::uint64_t i = L.i.read(x), j = L.j.read(x), k = L.col.read(x);
  std::uint64_t t = 0, c = 0;
  if (L.ctrl.read(x) == 0) {
    t = i == k ? 1 : 0;
    c = i == k ? j : 0;
  } else {
    t = j == k ? 1 : 2;
    c = j == k ? i : 0;
  }
  return x ^ L.tag.place(t) ^ L.copy.place(c);
}

// On the ctrl 1, tag 1 branch the column register holds j and the copy i;
// swapping them lines both halves up as |v, i, j>.
std::uint64_t swap_map(const HebbLayout& L, std::uint64_t x) {
  if (L.ctrl.read(x) != 1 || L.tag.read(x) != 1) return x;
  const std::uint64_t k = L.col.read(x), c = L.copy.read(x);
  const std::uint64_t cleared = x & ~L.col.mask() & ~L.copy.mask();
  return cleared | L.col.place(c) | L.copy.place(k);
}

RealVector flat_pattern(const PatternMatrix& X) {
  const std::size_t pad = padded(X.N());
  RealVector a(pad * padded(X.P()), 0.0);
  const double f = X.frobenius();
  for (std::size_t i = 0; i < X.P(); ++i) {
    for (std::size_t j = 0; j < X.N(); ++j) a[j + pad * i] = X.rows[i][j] / f;
  }
  return a;
}

RealVector uniform(std::size_t n) {
  return RealVector(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

void prepare_register(StateVector& s, const QubitRange& r, std::span<const double> a) {
  if (r.count == 0) return;
  const std::vector<std::size_t> q = r.qubits();
  apply_unitary(s, q, UnitaryOp::state_preparation(a));
}

void unprepare_register(StateVector& s, const QubitRange& r, std::span<const double> a) {
  if (r.count == 0) return;
  const std::vector<std::size_t> q = r.qubits();
  apply_unitary(s, q, UnitaryOp::state_preparation(a).adjoint());
}

std::vector<std::size_t> concat(const QubitRange& a, const QubitRange& b) {
  std::vector<std::size_t> q = a.qubits();
  const std::vector<std::size_t> r = b.qubits();
  q.insert(q.end(), r.begin(), r.end());
  return q;
}

}  // namespace

RealVector PatternMatrix::column(std::size_t j) const {
  RealVector v;
  for (const RealVector& r : rows) v.push_back(r.at(j));
  return v;
}

double PatternMatrix::frobenius() const {
  double s = 0.0;
  for (const RealVector& r : rows) s += dot(r, r);
  return std::sqrt(s);
}

void PatternMatrix::validate() const {
  if (P() < 1 || N() < 2) fail(ErrorCode::kInvalidArgument, "need P >= 1 and N >= 2");
  for (const RealVector& r : rows) {
    if (r.size() != N()) fail(ErrorCode::kDimMismatch, "pattern rows differ in length");
    for (double a : r) {
      if (!std::isfinite(a)) fail(ErrorCode::kInvalidArgument, "non-finite pattern entry");
      if (discrete && a != 1.0 && a != -1.0) {
        fail(ErrorCode::kInvalidArgument, "discrete patterns take values +-1");
      }
    }
  }
}

RealVector HopfieldWeights::column(std::size_t j) const {
  RealVector v;
  for (const RealVector& r : W) v.push_back(r.at(j));
  return v;
}

double HopfieldWeights::frobenius() const {
  double s = 0.0;
  for (const RealVector& r : W) s += dot(r, r);
  return std::sqrt(s);
}

double HopfieldWeights::max_abs() const {
  double m = 0.0;
  for (const RealVector& r : W) {
    for (double a : r) m = std::max(m, std::abs(a));
  }
  return m;
}

void HopfieldWeights::validate() const {
  for (std::size_t i = 0; i < N(); ++i) {
    if (W[i].size() != N()) fail(ErrorCode::kInvalidArgument, "weights must be square");
    if (W[i][i] != 0.0) fail(ErrorCode::kInvalidArgument, "nonzero diagonal weight");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(W[i][j] - W[j][i]) > 1e-12) fail(ErrorCode::kInvalidArgument, "asymmetric weights");
    }
  }
}

HopfieldWeights hebb_classical(const PatternMatrix& X) {
  X.validate();
  const std::size_t N = X.N();
  HopfieldWeights h{std::vector<RealVector>(N, RealVector(N, 0.0))};
  std::vector<RealVector> cols;
  for (std::size_t j = 0; j < N; ++j) cols.push_back(X.column(j));
  const double P = static_cast<double>(X.P());
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      h.W[i][j] = h.W[j][i] = dot(cols[i], cols[j]) / P;
    }
  }
  return h;
}

PatternState pattern_state(const PatternMatrix& X, Backend& backend) {
  X.validate();
  if (X.frobenius() == 0.0) fail(ErrorCode::kZeroMatrix, "pattern matrix is zero");
  PatternState out;
  out.amplitudes = flat_pattern(X);
  out.column_qubits = index_width(X.N());
  out.row_qubits = index_width(X.P());
  const std::size_t width = out.column_qubits + out.row_qubits;
  backend.ledger().record({EventKind::kPrep, width, 1, "pattern_state"});
  if (backend.is_full()) {
    backend.require_width(width);
    StateVector s(backend.qubit_cap());
    const QubitRange col = s.add_register("column", out.column_qubits);
    const QubitRange row = s.add_register("row", out.row_qubits);
    prepare_register(s, QubitRange{col.first, col.count + row.count}, out.amplitudes);
    out.state = std::move(s);
  }
  return out;
}

HebbResult hebb_quantum(const PatternMatrix& X, double epsilon, Backend& backend) {
  X.validate();
  check_epsilon(epsilon);
  const double fro = X.frobenius();
  if (fro == 0.0) fail(ErrorCode::kZeroMatrix, "pattern matrix is zero");
  const std::size_t N = X.N();
  const double P = static_cast<double>(X.P());
  const double to_weight = fro * fro / P;

  HebbResult r;
  r.epsilon = epsilon;
  const std::size_t wn = index_width(N);
  const std::size_t wp = index_width(X.P());
  // column, row, copy, tag, ctrl, i, j.
  const std::size_t tagged_width = 3 * wn + wp + 3 + wn;
  std::optional<StateVector> s;
  HebbLayout L;
  const RealVector flat = flat_pattern(X);
  const RealVector idx = uniform(N);

  if (backend.is_full()) {
    backend.require_width(tagged_width + 1);
    s.emplace(backend.qubit_cap());
    L.col = s->add_register("column", wn);
    L.row = s->add_register("row", wp);
    L.copy = s->add_register("copy", wn);
    L.tag = s->add_register("tag", 2);
    L.ctrl = s->add_register("ctrl", 1);
    L.i = s->add_register("i", wn);
    L.j = s->add_register("j", wn);
    prepare_register(*s, QubitRange{L.col.first, L.col.count + L.row.count}, flat);
    prepare_register(*s, L.i, idx);
    prepare_register(*s, L.j, idx);
    const std::vector<std::size_t> c{L.ctrl.first};
    apply_unitary(*s, c, UnitaryOp::hadamard());
    apply_index_map(*s, [&](std::uint64_t x) { return tag_map(L, x); });
    apply_index_map(*s, [&](std::uint64_t x) { return swap_map(L, x); });
    // q_ij = 2 N^2 sum over the remaining registers of a(ctrl 0) a(ctrl 1).
    const auto amps = s->amplitudes();
    std::vector<double> acc(N * N, 0.0);
    for (std::uint64_t x = 0; x < amps.size(); ++x) {
      if (L.ctrl.read(x) != 0) continue;
      const std::uint64_t i = L.i.read(x), j = L.j.read(x);
      if (i >= N || j >= N) continue;
      acc[i + N * j] += (std::conj(amps[x]) * amps[x | L.ctrl.place(1)]).real();
    }
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = i + 1; j < N; ++j) {
        r.overlaps.push_back(2.0 * static_cast<double>(N * N) * acc[i + N * j]);
      }
    }
  } else {
    std::vector<RealVector> cols;
    for (std::size_t j = 0; j < N; ++j) cols.push_back(X.column(j));
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = i + 1; j < N; ++j) r.overlaps.push_back(dot(cols[i], cols[j]) / (fro * fro));
    }
  }
  backend.ledger().record({EventKind::kPrep, tagged_width, 1, "hebb_tagging"});

  const Estimates e = adaptive_estimates(r.overlaps, epsilon, tagged_width, backend);
  r.n_bits = e.bits;
  r.degenerate_scale = e.degenerate;
  r.weights.W.assign(N, RealVector(N, 0.0));
  std::size_t t = 0;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j, ++t) {
      r.weights.W[i][j] = r.weights.W[j][i] = e.values[t] * to_weight;
    }
  }
  r.amplitude_factor = std::min(1.0, P / fro);
  r.payload.assign(N * N, 0.0);
  if (e.degenerate) {
    backend.ledger().note("hebb_degenerate_scale", 1.0);
  } else {
    r.scale = 1.0 / r.weights.max_abs();
    const double inv_n = 1.0 / static_cast<double>(N);
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) {
        r.payload[i + N * j] = r.amplitude_factor * r.scale * r.weights.W[i][j] * inv_n;
      }
    }
    r.payload_norm = norm(r.payload);
    backend.ledger().note("hebb_payload_norm", r.payload_norm);
  }

  if (s) {
    // Undo the tagging and the preparations, then write the flag.
    apply_index_map(*s, [&](std::uint64_t x) { return swap_map(L, x); });
    apply_index_map(*s, [&](std::uint64_t x) { return tag_map(L, x); });
    const std::vector<std::size_t> c{L.ctrl.first};
    apply_unitary(*s, c, UnitaryOp::hadamard());
    unprepare_register(*s, QubitRange{L.col.first, L.col.count + L.row.count}, flat);
    const QubitRange flag = s->add_register("flag", 1);
    const std::size_t pad = padded(N);
    std::vector<Matrix> blocks(pad * pad, Matrix::Identity(2, 2));
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) {
        const double g = r.payload[i + N * j] * static_cast<double>(N);
        blocks[i + pad * j] = UnitaryOp::rotation(g, std::sqrt(std::max(0.0, 1.0 - g * g))).matrix();
      }
    }
    const std::vector<std::size_t> selects = concat(L.i, L.j);
    const std::vector<std::size_t> targets{flag.first};
    apply_multiplexed(*s, {}, {}, selects, targets, blocks);
    const std::vector<std::size_t> fq{flag.first};
    r.payload_norm = std::sqrt(marginal_probabilities(*s, fq)[0]);
    r.state = std::move(s);
  }
  return r;
}

Activation parse_activation(std::string_view name) {
  if (name == "threshold") return Activation::kThreshold;
  if (name == "sigmoid") return Activation::kSigmoid;
  fail(ErrorCode::kConfigInvalid, "unknown activation '" + std::string(name) + "'");
}

std::string_view to_string(Activation a) {
  return a == Activation::kThreshold ? "threshold" : "sigmoid";
}

namespace {

double activate(double field, Activation a) {
  if (a == Activation::kThreshold) return field > 0.0 ? 1.0 : -1.0;
  return 1.0 / (1.0 + std::exp(-field));
}

void check_recall_shapes(const PatternMatrix& X, const HopfieldWeights& W) {
  X.validate();
  W.validate();
  if (W.N() != X.N()) fail(ErrorCode::kDimMismatch, "weights differ from the pattern width");
}

}  // namespace

PatternMatrix recall_classical(const PatternMatrix& X, const HopfieldWeights& W,
                               Activation activation) {
  check_recall_shapes(X, W);
  PatternMatrix out{{}, activation == Activation::kThreshold};
  for (const RealVector& u : X.rows) {
    RealVector row;
    for (std::size_t j = 0; j < X.N(); ++j) row.push_back(activate(dot(u, W.column(j)), activation));
    out.rows.push_back(std::move(row));
  }
  return out;
}

RecallResult recall_step(const PatternMatrix& X, const HopfieldWeights& W,
                         Activation activation, double epsilon, Backend& backend) {
  check_recall_shapes(X, W);
  check_epsilon(epsilon);
  const std::size_t P = X.P(), N = X.N();
  const double fx = X.frobenius(), fw = W.frobenius();
  RecallResult r;
  r.X.discrete = activation == Activation::kThreshold;
  r.fields.assign(P, RealVector(N, 0.0));

  // Tagged branch (i, j): row u_i of |X> against column w_j of |W>, the
  // unselected parts parked on separate junk slots.
  const std::size_t pad = padded(N);
  PairBatch batch;
  std::vector<RealVector> wcols;
  double eps = 0.5;
  bool any = false;
  for (std::size_t j = 0; j < N; ++j) wcols.push_back(W.column(j));
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      const double nu = norm(X.rows[i]), nw = norm(wcols[j]);
      RealVector a(4 * pad, 0.0), b(4 * pad, 0.0);
      if (fx > 0.0 && fw > 0.0) {
        for (std::size_t k = 0; k < N; ++k) {
          a[k] = X.rows[i][k] / fx;
          b[k] = wcols[j][k] / fw;
        }
        a[pad] = std::sqrt(std::max(0.0, 1.0 - nu * nu / (fx * fx)));
        b[2 * pad] = std::sqrt(std::max(0.0, 1.0 - nw * nw / (fw * fw)));
      }
      if (nu > 0.0 && nw > 0.0) {
        eps = std::min(eps, epsilon * nu * nw / (fx * fw));
        any = true;
      }
      batch.pairs.push_back({std::move(a), std::move(b)});
    }
  }
  backend.ledger().record({EventKind::kPrep, index_width(4 * pad) + index_width(P * N) + 1, 1,
                           "recall_state"});
  if (any) {
    const CoherentResult c = parallel_swap_test(batch, eps, backend);
    r.n_bits = c.n_bits;
    for (std::size_t i = 0; i < P; ++i) {
      for (std::size_t j = 0; j < N; ++j) r.fields[i][j] = c.estimates[i * N + j] * fx * fw;
    }
  }
  for (std::size_t i = 0; i < P; ++i) {
    RealVector row;
    const double nu = norm(X.rows[i]);
    for (std::size_t j = 0; j < N; ++j) {
      const double f = r.fields[i][j];
      const double bound = 2.0 * epsilon * nu * norm(wcols[j]);
      if (activation == Activation::kThreshold && bound > 0.0 && std::abs(f) <= bound) {
        r.ambiguous.emplace_back(i, j);
      }
      row.push_back(activate(f, activation));
    }
    r.X.rows.push_back(std::move(row));
  }
  if (!r.ambiguous.empty()) {
    backend.ledger().note("ambiguous_signs", static_cast<double>(r.ambiguous.size()));
  }
  return r;
}

}  // namespace qmlp
