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

#include "qmlp/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qmlp::kernels {
namespace {

std::uint64_t mask_of(std::span<const std::size_t> qubits) {
  std::uint64_t m = 0;
  for (std::size_t q : qubits) m |= std::uint64_t{1} << q;
  return m;
}

std::uint64_t gather_bits(std::uint64_t index,
                          std::span<const std::size_t> qubits) {
  std::uint64_t out = 0;
  for (std::size_t b = 0; b < qubits.size(); ++b) {
    out |= ((index >> qubits[b]) & 1u) << b;
  }
  return out;
}

std::uint64_t control_pattern(const MultiplexLayout& layout) {
  std::uint64_t v = 0;
  for (std::size_t c = 0; c < layout.controls.size(); ++c) {
    if (layout.control_values[c] != 0) {
      v |= std::uint64_t{1} << layout.controls[c];
    }
  }
  return v;
}

bool is_identity(const Matrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) != (r == c ? Complex(1.0) : Complex(0.0))) return false;
    }
  }
  return true;
}

int num_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int thread_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

std::vector<std::uint64_t> target_offsets(const MultiplexLayout& layout) {
  const std::size_t t = layout.targets.size();
  std::vector<std::uint64_t> offsets(std::size_t{1} << t, 0);
  for (std::size_t l = 0; l < offsets.size(); ++l) {
    for (std::size_t b = 0; b < t; ++b) {
      if ((l >> b) & 1u) offsets[l] |= std::uint64_t{1} << layout.targets[b];
    }
  }
  return offsets;
}

// Calls body(i0, select) for every amplitude group whose control qubits match,
// where i0 is the group's index with all target bits clear.
template <typename Body, typename Setup>
void for_each_group(std::size_t size, const MultiplexLayout& layout,
                    Setup setup, Body body) {
  std::vector<std::size_t> sorted_targets(layout.targets);
  std::sort(sorted_targets.begin(), sorted_targets.end());
  const std::uint64_t cmask = mask_of(layout.controls);
  const std::uint64_t cval = control_pattern(layout);
  const std::int64_t bases = static_cast<std::int64_t>(size >> layout.targets.size());
#pragma omp parallel if (size >= kParallelThreshold)
  {
    auto scratch = setup();
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < bases; ++b) {
      std::uint64_t i0 = static_cast<std::uint64_t>(b);
      for (std::size_t q : sorted_targets) {
        const std::uint64_t low = i0 & ((std::uint64_t{1} << q) - 1);
        i0 = ((i0 >> q) << (q + 1)) | low;
      }
      if ((i0 & cmask) != cval) continue;
      body(scratch, i0, gather_bits(i0, layout.selects));
    }
  }
}

}  // namespace

LowRankBlock LowRankBlock::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return {Eigen::VectorXcd::Ones(d), Matrix(d, 0), Matrix(0, 0)};
}

bool LowRankBlock::is_identity() const {
  if (u.cols() != 0) return false;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (diag[i] != Complex(1.0)) return false;
  }
  return true;
}

Matrix LowRankBlock::dense() const {
  Matrix m = diag.asDiagonal();
  if (u.cols() > 0) m += u * core * u.adjoint();
  return m;
}

LowRankBlock LowRankBlock::adjoint() const {
  return {diag.conjugate(), u, core.adjoint()};
}

namespace parallel {

void apply_multiplexed(std::span<Complex> amps, const MultiplexLayout& layout,
                       std::span<const Matrix> blocks) {
  const std::size_t dim = std::size_t{1} << layout.targets.size();
  const std::vector<std::uint64_t> offsets = target_offsets(layout);
  std::vector<char> skip(blocks.size());
  for (std::size_t s = 0; s < blocks.size(); ++s) skip[s] = is_identity(blocks[s]);
  for_each_group(
      amps.size(), layout,
      [dim] { return std::vector<Complex>(2 * dim); },
      [&](std::vector<Complex>& buf, std::uint64_t i0, std::uint64_t s) {
        if (skip[s]) return;
        const Matrix& m = blocks[s];
        Complex* in = buf.data();
        Complex* out = buf.data() + dim;
        for (std::size_t l = 0; l < dim; ++l) in[l] = amps[i0 + offsets[l]];
        for (std::size_t r = 0; r < dim; ++r) {
          Complex acc = 0.0;
          for (std::size_t c = 0; c < dim; ++c) {
            acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
          }
          out[r] = acc;
        }
        for (std::size_t l = 0; l < dim; ++l) amps[i0 + offsets[l]] = out[l];
      });
}

void apply_multiplexed_lowrank(std::span<Complex> amps,
                               const MultiplexLayout& layout,
                               std::span<const LowRankBlock> blocks) {
  const std::size_t dim = std::size_t{1} << layout.targets.size();
  const std::vector<std::uint64_t> offsets = target_offsets(layout);
  std::vector<char> skip(blocks.size());
  for (std::size_t s = 0; s < blocks.size(); ++s) skip[s] = blocks[s].is_identity();
  for_each_group(
      amps.size(), layout,
      [dim] { return Eigen::VectorXcd(static_cast<Eigen::Index>(dim)); },
      [&](Eigen::VectorXcd& v, std::uint64_t i0, std::uint64_t s) {
        if (skip[s]) return;
        const LowRankBlock& blk = blocks[s];
        for (std::size_t l = 0; l < dim; ++l) {
          v[static_cast<Eigen::Index>(l)] = amps[i0 + offsets[l]];
        }
        Eigen::VectorXcd w = blk.diag.cwiseProduct(v);
        if (blk.u.cols() > 0) w.noalias() += blk.u * (blk.core * (blk.u.adjoint() * v));
        for (std::size_t l = 0; l < dim; ++l) {
          amps[i0 + offsets[l]] = w[static_cast<Eigen::Index>(l)];
        }
      });
}

void apply_index_map(std::vector<Complex>& amps, const IndexMap& map) {
  std::vector<Complex> out(amps.size());
  const std::int64_t n = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) {
    out[map(static_cast<std::uint64_t>(i))] = amps[static_cast<std::size_t>(i)];
  }
  amps.swap(out);
}

std::vector<double> marginal(std::span<const Complex> amps,
                             std::span<const std::size_t> qubits) {
  const std::size_t k = std::size_t{1} << qubits.size();
  const int threads = amps.size() >= kParallelThreshold ? num_threads() : 1;
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(threads),
                                           std::vector<double>(k, 0.0));
  const std::int64_t n = static_cast<std::int64_t>(amps.size());
#pragma omp parallel num_threads(threads) if (threads > 1)
  {
    std::vector<double>& acc = partial[static_cast<std::size_t>(thread_id())];
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto idx = static_cast<std::uint64_t>(i);
      acc[gather_bits(idx, qubits)] += std::norm(amps[idx]);
    }
  }
  std::vector<double> out(k, 0.0);
  for (const auto& acc : partial) {
    for (std::size_t o = 0; o < k; ++o) out[o] += acc[o];
  }
  return out;
}

}  // namespace parallel

namespace serial {

void apply_multiplexed(std::span<Complex> amps, const MultiplexLayout& layout,
                       std::span<const Matrix> blocks) {
  const std::uint64_t tmask = mask_of(layout.targets);
  const std::uint64_t cmask = mask_of(layout.controls);
  const std::uint64_t cval = control_pattern(layout);
  const std::size_t dim = std::size_t{1} << layout.targets.size();
  std::vector<Complex> out(amps.begin(), amps.end());
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & cmask) != cval) continue;
    const Matrix& m = blocks[gather_bits(i, layout.selects)];
    const std::uint64_t row = gather_bits(i, layout.targets);
    const std::uint64_t base = i & ~tmask;
    Complex acc = 0.0;
    for (std::uint64_t col = 0; col < dim; ++col) {
      std::uint64_t j = base;
      for (std::size_t b = 0; b < layout.targets.size(); ++b) {
        if ((col >> b) & 1u) j |= std::uint64_t{1} << layout.targets[b];
      }
      acc += m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) *
             amps[j];
    }
    out[i] = acc;
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

void apply_index_map(std::vector<Complex>& amps, const IndexMap& map) {
  std::vector<Complex> out(amps.size());
  for (std::uint64_t i = 0; i < amps.size(); ++i) out[map(i)] = amps[i];
  amps.swap(out);
}

std::vector<double> marginal(std::span<const Complex> amps,
                             std::span<const std::size_t> qubits) {
  std::vector<double> out(std::size_t{1} << qubits.size(), 0.0);
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    out[gather_bits(i, qubits)] += std::norm(amps[i]);
  }
  return out;
}

}  // namespace serial
}  // namespace qmlp::kernels
