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

// Waterfilling view of the max/average pay-off: the optimal weights are
//
//     w(x) = max((1 - alpha) p(x), level),   sum_x (level - (1 - alpha) p(x))^+ = alpha.
//
// Solved exactly over candidate flood sets (the m least probable symbols),
// without touching the merge schedule. Used to cross-check it.

#include <cmath>
#include <cstddef>
#include <vector>

#include "mergecode/distributions.hpp"
#include "mergecode/error.hpp"
#include "mergecode/merge_schedule.hpp"
#include "mergecode/numeric.hpp"

namespace mergecode {

struct WaterLevel {
  double level = 0.0;
  double alpha = 0.0;
  std::size_t flooded_count = 0;  // the flooded symbols are the last flooded_count

  std::vector<std::size_t> flooded(std::size_t n) const {
    std::vector<std::size_t> out;
    for (std::size_t i = n - flooded_count; i < n; ++i) out.push_back(i);
    return out;
  }
};

// Relative slack when deciding whether a symbol sits at the water line.
inline constexpr double kFloodSlack = 1e-13;

inline WaterLevel water_level(const ProbabilityVector& p, double alpha) {
  require_alpha(alpha);
  const std::size_t n = p.size();
  const auto& prob = p.probs;
  WaterLevel best{.level = prob.back(), .alpha = alpha, .flooded_count = 1};
  double tail = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    const double scaled = (1.0 - alpha) * prob[n - m];
    tail += prob[n - m];
    const double level = (alpha + (1.0 - alpha) * tail) / static_cast<double>(m);
    // Flooding m symbols is admissible iff the m-th smallest lies under the
    // level it produces; admissibility is monotone in m.
    if (scaled <= level * (1.0 + kFloodSlack)) {
      best.level = level;
      best.flooded_count = m;
    } else {
      break;
    }
  }
  return best;
}

inline WeightVector waterfill_weights(const ProbabilityVector& p, double alpha) {
  const WaterLevel wl = water_level(p, alpha);
  const std::size_t n = p.size();
  WeightVector w;
  w.alpha = alpha;
  w.merged_from = n - wl.flooded_count;
  w.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.weights[i] = i >= w.merged_from ? wl.level : (1.0 - alpha) * p.probs[i];
  }
  return w;
}

/// Smallest alpha whose water level equals `level`, i.e. the root of
///   G(alpha) = sum_x (level - (1 - alpha) p(x))^+ - alpha.
/// G is piecewise linear and non-increasing in alpha; a symbol becomes active
/// at alpha = 1 - level / p(x). Infeasible when level > 1 / |X|.
inline double alpha_for_level(const ProbabilityVector& p, double level) {
  if (!(level > 0.0) || !std::isfinite(level)) {
    throw Error(Errc::InvalidParam, "water level must be a positive number");
  }
  const std::size_t n = p.size();
  const double uniform = 1.0 / static_cast<double>(n);
  if (level > uniform * (1.0 + 1e-12)) {
    throw InfeasibleError("water level above 1/|X| cannot be reached",
                          log_radix(static_cast<double>(n), p.radix));
  }
  const auto& prob = p.probs;
  // Already satisfied at alpha = 0.
  if (level <= prob.back()) return 0.0;

  std::size_t active = 0;
  double active_mass = 0.0;
  while (active < n && prob[n - 1 - active] <= level) {
    active_mass += prob[n - 1 - active];
    ++active;
  }
  double lo = 0.0;
  double g_lo = static_cast<double>(active) * level - active_mass;
  while (true) {
    const double hi = active < n ? 1.0 - level / prob[n - 1 - active] : 1.0;
    const double slope = active_mass - 1.0;
    const double g_hi = g_lo + slope * (hi - lo);
    if (active == n) return lo;
    if (g_hi <= 0.0) return lo + g_lo / -slope;
    lo = hi;
    g_lo = g_hi;
    active_mass += prob[n - 1 - active];
    ++active;
  }
}

}  // namespace mergecode
