// Copyright 2026 The mergecode Authors
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

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "mergecode/error.hpp"

namespace mergecode {

// Lengths closer than this to an integer are treated as that integer when
// ceiling, so exact dyadic weights keep their length.
inline constexpr double kIntegerSnap = 1e-9;

/// log base `radix` of `x`, computed as ln(x) / ln(radix).
inline double log_radix(double x, int radix) {
  return std::log(x) / std::log(static_cast<double>(radix));
}

/// ceil() that leaves values within kIntegerSnap of an integer unchanged.
inline double ceil_length(double length) {
  const double nearest = std::round(length);
  if (std::abs(length - nearest) <= kIntegerSnap) return nearest;
  return std::ceil(length);
}

/// log(sum(exp(v))) without overflow.
inline double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(top)) return top;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - top);
  return top + std::log(acc);
}

/// Shannon entropy in base `radix`. Zero entries contribute nothing.
inline double entropy(std::span<const double> probs, int radix) {
  double h = 0.0;
  for (double q : probs) {
    if (q > 0.0) h -= q * std::log(q);
  }
  return h / std::log(static_cast<double>(radix));
}

/// Kraft sum of real lengths: sum radix^-l.
inline double kraft_sum(std::span<const double> lengths, int radix) {
  const double ln_d = std::log(static_cast<double>(radix));
  double s = 0.0;
  for (double l : lengths) s += std::exp(-l * ln_d);
  return s;
}

inline void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(Errc::AlphaOutOfRange,
                "alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
}

}  // namespace mergecode
