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

#include <cstdint>
#include <random>
#include <vector>

#include "mergecode/distributions.hpp"

namespace mergecode::testing {

/// (8, 4, 2, 1) / 15
inline ProbabilityVector example_one() {
  const std::vector<double> raw{8.0 / 15, 4.0 / 15, 2.0 / 15, 1.0 / 15};
  return canonicalize(raw, 2);
}

/// (1, 1, 2, 2, 2, 4, 5, 9) / 26, listed in increasing order as given.
inline ProbabilityVector example_two() {
  std::vector<double> raw;
  for (double c : {1.0, 1.0, 2.0, 2.0, 2.0, 4.0, 5.0, 9.0}) raw.push_back(c / 26);
  return canonicalize(raw, 2);
}

inline ProbabilityVector uniform(std::size_t n, int radix = 2) {
  return canonicalize(std::vector<double>(n, 1.0 / static_cast<double>(n)), radix);
}

/// Uniform draw from the probability simplex on n symbols (Dirichlet(1)).
inline ProbabilityVector random_distribution(std::mt19937_64& rng, std::size_t n, int radix = 2) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> raw(n);
  double total = 0.0;
  for (double& v : raw) {
    v = expo(rng);
    total += v;
  }
  for (double& v : raw) v /= total;
  return canonicalize(raw, radix);
}

inline std::size_t random_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double random_unit(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace mergecode::testing
