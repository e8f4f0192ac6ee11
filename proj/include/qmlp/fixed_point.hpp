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

namespace qmlp {

// Two's-complement fixed-point encoding of a value register: one sign bit,
// `int_bits` integer bits and `frac_bits` fractional bits.
struct FixedPointFormat {
  std::size_t int_bits = 1;
  std::size_t frac_bits = 16;

  std::size_t width() const { return 1 + int_bits + frac_bits; }
  double resolution() const;
  // Rounds to the nearest representable value. Throws FormatOverflow when the
  // rounded value lies outside [-2^int_bits, 2^int_bits).
  std::uint64_t encode(double value) const;
  double decode(std::uint64_t code) const;
  double quantize(double value) const { return decode(encode(value)); }
};

}  // namespace qmlp
