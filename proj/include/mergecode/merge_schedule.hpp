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

// The merging rule for the max/average length pay-off
//
//     L_a(l, p) = a * max_x l(x) + (1 - a) * sum_x p(x) l(x),   a in [0, 1].
//
// The optimal lengths are -log_D w_a(x), where w_a is obtained from p by
// scaling every symbol by (1 - a) and letting the smallest weights rise
// together. As a grows, symbols join the merged set U one at a time (from the
// least probable upwards) at breakpoints a_1 <= a_2 <= ... <= a_{n-1} = a_max.
// Between breakpoints every weight is affine in a.
//
// Segment k covers [a_k, a_{k+1}); its merged set holds the k + 1 least
// probable symbols, i.e. canonical indices n-1-k .. n-1.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "mergecode/distributions.hpp"
#include "mergecode/numeric.hpp"

namespace mergecode {

struct MergeSchedule {
  std::vector<double> alphas;               // a_0 = 0, ..., a_{n-1}
  double alpha_max = 0.0;                   // 1 - 1 / (n * p_max)
  std::vector<std::size_t> card;            // |U_k| = k + 1
  std::vector<double> wstar_at_breakpoint;  // merged weight at a_k
  std::vector<double> tail_mass;            // mass outside U_k
  std::vector<double> slope;                // tail_mass[k] / |U_k|

  std::size_t size() const noexcept { return alphas.size(); }

  /// Index of the active segment for alpha < alpha_max: the last k with
  /// alphas[k] <= alpha. Repeated breakpoints (ties) resolve to the last one.
  std::size_t segment(double alpha) const {
    const auto it = std::upper_bound(alphas.begin(), alphas.end(), alpha);
    return static_cast<std::size_t>(it - alphas.begin()) - 1;
  }
};

struct WeightVector {
  std::vector<double> weights;  // canonical order
  double alpha = 0.0;
  std::size_t merged_from = 0;  // first canonical index of the merged set
};

/// Precompute all breakpoints, merged weights and slopes in O(n).
inline MergeSchedule build_schedule(const ProbabilityVector& p) {
  const auto& prob = p.probs;
  const std::size_t n = prob.size();
  MergeSchedule s;
  s.alpha_max = std::max(0.0, 1.0 - 1.0 / (static_cast<double>(n) * prob.front()));
  s.alphas.reserve(n);
  s.card.reserve(n);
  s.wstar_at_breakpoint.reserve(n);
  s.tail_mass.reserve(n);
  s.slope.reserve(n);

  // tail[k] = sum of prob[0 .. n-2-k]
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + prob[i];

  double alpha = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t newest = n - 1 - k;
    const double tail = prefix[newest];
    const double slope = tail / static_cast<double>(k + 1);
    s.alphas.push_back(alpha);
    s.card.push_back(k + 1);
    s.wstar_at_breakpoint.push_back((1.0 - alpha) * prob[newest]);
    s.tail_mass.push_back(tail);
    s.slope.push_back(slope);
    if (k + 1 < n) {
      const double next = prob[newest - 1];
      alpha += (1.0 - alpha) * (next - prob[newest]) / (slope + next);
    }
  }
  return s;
}

/// Optimal weights at `alpha`. Uniform for alpha >= alpha_max.
inline WeightVector weights_at(const MergeSchedule& s, const ProbabilityVector& p, double alpha) {
  require_alpha(alpha);
  const std::size_t n = p.size();
  WeightVector w;
  w.alpha = alpha;
  if (alpha >= s.alpha_max) {
    w.weights.assign(n, 1.0 / static_cast<double>(n));
    w.merged_from = 0;
    return w;
  }
  const std::size_t k = s.segment(alpha);
  const std::size_t first = n - 1 - k;
  const double wstar = s.wstar_at_breakpoint[k] + (alpha - s.alphas[k]) * s.slope[k];
  w.weights.resize(n);
  for (std::size_t i = 0; i < first; ++i) w.weights[i] = (1.0 - alpha) * p.probs[i];
  std::fill(w.weights.begin() + static_cast<std::ptrdiff_t>(first), w.weights.end(), wstar);
  w.merged_from = first;
  return w;
}

inline std::size_t merged_cardinality(const MergeSchedule& s, double alpha) {
  require_alpha(alpha);
  if (alpha >= s.alpha_max) return s.size();
  return s.card[s.segment(alpha)];
}

}  // namespace mergecode
