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

#include "qmlp/fixed_point.hpp"

#include <cmath>
#include <string>

#include "qmlp/error.hpp"

namespace qmlp {

double FixedPointFormat::resolution() const {
  return std::ldexp(1.0, -static_cast<int>(frac_bits));
}

std::uint64_t FixedPointFormat::encode(double value) const {
  if (width() > 62) fail(ErrorCode::kInvalidArgument, "fixed-point format too wide");
  if (!std::isfinite(value)) {
    fail(ErrorCode::kFormatOverflow, "non-finite value for the value register");
  }
  const double scaled = std::nearbyint(std::ldexp(value, static_cast<int>(frac_bits)));
  const double limit = std::ldexp(1.0, static_cast<int>(int_bits + frac_bits));
  if (scaled < -limit || scaled >= limit) {
    fail(ErrorCode::kFormatOverflow,
         "value " + std::to_string(value) + " outside the " +
             std::to_string(width()) + "-bit fixed-point range");
  }
  const auto n = static_cast<std::int64_t>(scaled);
  const std::uint64_t mask = (std::uint64_t{1} << width()) - 1;
  return static_cast<std::uint64_t>(n) & mask;
}

double FixedPointFormat::decode(std::uint64_t code) const {
  const std::uint64_t sign_bit = std::uint64_t{1} << (width() - 1);
  auto n = static_cast<std::int64_t>(code);
  if ((code & sign_bit) != 0) n -= static_cast<std::int64_t>(sign_bit << 1);
  return std::ldexp(static_cast<double>(n), -static_cast<int>(frac_bits));
}

}  // namespace qmlp
