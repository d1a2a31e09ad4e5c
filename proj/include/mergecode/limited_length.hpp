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

// Minimum average length subject to max_x l(x) <= L.
//
// The Lagrangian of the constrained problem is the max/average pay-off with
// multiplier mu = alpha / (1 - alpha), so the answer is the merge-rule code at
// the smallest alpha whose maximum length has dropped to L.

#include <cmath>
#include <cstdio>
#include <string>

#include "mergecode/codes.hpp"
#include "mergecode/distributions.hpp"
#include "mergecode/error.hpp"
#include "mergecode/merge_schedule.hpp"
#include "mergecode/numeric.hpp"

namespace mergecode {

// |l_lim - log_D |X|| within this is treated as the no-compression case.
inline constexpr double kNoCompressionWindow = 1e-12;

struct LimitedCodeResult {
  double l_lim = 0.0;
  double alpha_hat = 0.0;
  bool feasible = false;
  WeightVector weights;
  CodeLengths lengths;
  double avg_length = 0.0;
};

namespace detail {

inline std::string format_length(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace detail

/// Smallest alpha whose optimal code has maximum length <= l_lim.
/// Throws InfeasibleError when l_lim < log_D |X|.
inline double alpha_for_limit(const MergeSchedule& s, const ProbabilityVector& p, double l_lim) {
  if (!(l_lim > 0.0) || !std::isfinite(l_lim)) {
    throw Error(Errc::InvalidParam, "length limit must be a positive number");
  }
  const std::size_t n = p.size();
  const double shannon_max = -log_radix(p.smallest(), p.radix);
  const double floor_length = log_radix(static_cast<double>(n), p.radix);

  if (l_lim >= shannon_max) return 0.0;
  if (std::abs(l_lim - floor_length) <= kNoCompressionWindow) return s.alpha_max;
  if (l_lim < floor_length) {
    throw InfeasibleError("length limit " + detail::format_length(l_lim) +
                              " is infeasible: minimum achievable max length is " +
                              detail::format_length(floor_length),
                          floor_length);
  }

  // First segment whose right end already meets the limit.
  std::size_t k = 0;
  while (k + 2 < n && l_lim < -log_radix(s.wstar_at_breakpoint[k + 1], p.radix)) ++k;

  const double merged = static_cast<double>(s.card[k]);
  return 1.0 - (1.0 - merged * std::pow(static_cast<double>(p.radix), -l_lim)) / s.tail_mass[k];
}

inline double alpha_for_limit(const ProbabilityVector& p, double l_lim) {
  return alpha_for_limit(build_schedule(p), p, l_lim);
}

inline LimitedCodeResult limited_code(const ProbabilityVector& p, double l_lim) {
  const MergeSchedule s = build_schedule(p);
  LimitedCodeResult r;
  r.l_lim = l_lim;
  r.alpha_hat = alpha_for_limit(s, p, l_lim);
  r.feasible = true;
  r.weights = weights_at(s, p, r.alpha_hat);
  r.lengths = lengths_from_weights(r.weights, p.radix);
  for (std::size_t i = 0; i < p.size(); ++i) r.avg_length += p.probs[i] * r.lengths.real_lengths[i];
  return r;
}

}  // namespace mergecode
