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
#include <optional>
#include <span>
#include <vector>

#include "mergecode/distributions.hpp"
#include "mergecode/merge_schedule.hpp"
#include "mergecode/numeric.hpp"

namespace mergecode {

/// Real-valued codeword lengths together with their ceiled integer version.
struct CodeLengths {
  std::vector<double> real_lengths;  // canonical order
  std::vector<double> int_lengths;   // ceil_length(real_lengths[i])
  int radix = 2;
  double max_length = 0.0;
  double kraft_real = 0.0;
  double kraft_int = 0.0;
};

struct PayoffReport {
  double alpha = 0.0;
  double payoff = 0.0;
  double avg_length = 0.0;
  double max_length = 0.0;
  std::optional<double> entropy_w;           // set when the weights are known
  double entropy_p = 0.0;
  std::optional<std::size_t> cardinality;    // |U| at alpha, when known
};

struct OptimalCode {
  WeightVector weights;
  CodeLengths lengths;
  PayoffReport report;
};

/// Wrap arbitrary real lengths (e.g. from an oracle) in a CodeLengths.
inline CodeLengths make_code_lengths(std::vector<double> real_lengths, int radix) {
  CodeLengths c;
  c.radix = radix;
  c.real_lengths = std::move(real_lengths);
  c.int_lengths.reserve(c.real_lengths.size());
  for (double l : c.real_lengths) c.int_lengths.push_back(ceil_length(l));
  c.max_length = c.real_lengths.empty()
                     ? 0.0
                     : *std::max_element(c.real_lengths.begin(), c.real_lengths.end());
  c.kraft_real = kraft_sum(c.real_lengths, radix);
  c.kraft_int = kraft_sum(c.int_lengths, radix);
  return c;
}

/// l(x) = -log_D w(x).
inline CodeLengths lengths_from_weights(const WeightVector& w, int radix) {
  std::vector<double> lengths;
  lengths.reserve(w.weights.size());
  for (double q : w.weights) lengths.push_back(-log_radix(q, radix));
  // -log of 1 prints as -0
  for (double& l : lengths) l = l == 0.0 ? 0.0 : l;
  return make_code_lengths(std::move(lengths), radix);
}

/// Evaluate alpha * max l + (1 - alpha) * sum p l on the real lengths.
inline PayoffReport payoff(const CodeLengths& lengths, const ProbabilityVector& p, double alpha) {
  require_alpha(alpha);
  if (lengths.real_lengths.size() != p.size()) {
    throw Error(Errc::SizeMismatch, "payoff: lengths and distribution differ in size");
  }
  PayoffReport r;
  r.alpha = alpha;
  for (std::size_t i = 0; i < p.size(); ++i) r.avg_length += p.probs[i] * lengths.real_lengths[i];
  r.max_length = *std::max_element(lengths.real_lengths.begin(), lengths.real_lengths.end());
  r.payoff = alpha * r.max_length + (1.0 - alpha) * r.avg_length;
  r.entropy_p = entropy(p.probs, p.radix);
  return r;
}

inline OptimalCode optimal_code(const MergeSchedule& s, const ProbabilityVector& p, double alpha) {
  OptimalCode out;
  out.weights = weights_at(s, p, alpha);
  out.lengths = lengths_from_weights(out.weights, p.radix);
  out.report = payoff(out.lengths, p, alpha);
  out.report.entropy_w = entropy(out.weights.weights, p.radix);
  out.report.cardinality = merged_cardinality(s, alpha);
  return out;
}

inline OptimalCode optimal_code(const ProbabilityVector& p, double alpha) {
  return optimal_code(build_schedule(p), p, alpha);
}

/// `points` equally spaced values on [0, 1] merged with every breakpoint, so
/// kinks of the curve are sampled exactly. Sorted; a spaced value within 1e-12
/// of a breakpoint is replaced by the breakpoint.
inline std::vector<double> default_grid(const MergeSchedule& s, std::size_t points = 1001) {
  std::vector<double> kinks(s.alphas.begin(), s.alphas.end());
  kinks.push_back(s.alpha_max);
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

  std::vector<double> grid = kinks;
  for (std::size_t i = 0; i < points; ++i) {
    const double a = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    const auto it = std::lower_bound(kinks.begin(), kinks.end(), a);
    const bool near_kink = (it != kinks.end() && *it - a <= 1e-12) ||
                           (it != kinks.begin() && a - *(it - 1) <= 1e-12);
    if (!near_kink) grid.push_back(a);
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

/// One report per grid value, in grid order.
inline std::vector<PayoffReport> payoff_curve(const ProbabilityVector& p,
                                              std::span<const double> grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw Error(Errc::InvalidParam, "payoff_curve: grid must be sorted");
  }
  const MergeSchedule s = build_schedule(p);
  std::vector<PayoffReport> curve;
  curve.reserve(grid.size());
  for (double alpha : grid) curve.push_back(optimal_code(s, p, alpha).report);
  return curve;
}

}  // namespace mergecode
