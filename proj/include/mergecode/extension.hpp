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

// n-th memoryless extension of a source, and the per-symbol coding bounds
//
//     (1/n) H(w_a(x^n)) <= (1/n) L^n_a(l, p) < (1/n) H(w_a(x^n)) + 1/n
//
// for integer lengths l(x^n) = ceil(-log_D w_a(x^n)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mergecode/codes.hpp"
#include "mergecode/distributions.hpp"
#include "mergecode/error.hpp"
#include "mergecode/merge_schedule.hpp"
#include "mergecode/numeric.hpp"

namespace mergecode {

inline constexpr std::size_t kMaxExtensionOutcomes = 1'000'000;

struct ExtensionReport {
  std::size_t n = 1;
  double alpha = 0.0;
  double per_symbol_payoff = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Product distribution over all n-tuples, canonicalized. Tuple labels join
/// the symbol labels with ','. Each product is taken over the tuple's factors
/// in sorted order, so permuted tuples get bit-identical probabilities.
inline ProbabilityVector extend(const ProbabilityVector& p, std::size_t n) {
  if (n < 1) throw Error(Errc::InvalidParam, "extension order must be at least 1");
  const std::size_t k = p.size();
  std::size_t outcomes = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (outcomes > kMaxExtensionOutcomes / k) {
      throw Error(Errc::TooLarge, "extension has more than 10^6 outcomes");
    }
    outcomes *= k;
  }

  std::vector<double> probs;
  std::vector<std::string> labels;
  probs.reserve(outcomes);
  labels.reserve(outcomes);
  std::vector<std::size_t> digits(n, 0);
  std::vector<std::size_t> sorted(n);
  for (std::size_t o = 0; o < outcomes; ++o) {
    std::copy(digits.begin(), digits.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.end());
    double prob = 1.0;
    for (std::size_t d : sorted) prob *= p.probs[d];
    probs.push_back(prob);

    std::string label;
    for (std::size_t j = 0; j < n; ++j) {
      if (j) label += ',';
      label += p.label(digits[j]);
    }
    labels.push_back(std::move(label));

    for (std::size_t j = n; j-- > 0;) {
      if (++digits[j] < k) break;
      digits[j] = 0;
    }
  }
  return canonicalize(probs, p.radix, labels);
}

/// Run the merge rule on the n-th extension and report the per-symbol
/// pay-off of the ceiled lengths against its entropy bounds.
inline ExtensionReport extension_bounds(const ProbabilityVector& p, double alpha, std::size_t n) {
  require_alpha(alpha);
  const ProbabilityVector ext = extend(p, n);
  const MergeSchedule s = build_schedule(ext);
  const WeightVector w = weights_at(s, ext, alpha);
  const CodeLengths lengths = lengths_from_weights(w, ext.radix);

  double avg = 0.0;
  double top = 0.0;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    avg += ext.probs[i] * lengths.int_lengths[i];
    top = std::max(top, lengths.int_lengths[i]);
  }
  const double scale = 1.0 / static_cast<double>(n);
  ExtensionReport r;
  r.n = n;
  r.alpha = alpha;
  r.per_symbol_payoff = scale * (alpha * top + (1.0 - alpha) * avg);
  r.lower = scale * entropy(w.weights, ext.radix);
  r.upper = r.lower + scale;
  return r;
}

}  // namespace mergecode
