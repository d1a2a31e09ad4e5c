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

// Two-parameter pay-off mixing the average length with an exponential moment:
//
//     L_{t,a}(l, p) = (a / t) log_D sum_x p(x) D^{t l(x)} + (1 - a) sum_x p(x) l(x)
//
// The optimum satisfies D^-l(x) = a nu(x) + (1 - a) p(x) where nu is p tilted
// by D^{t l}. We solve that system by damped fixed-point iteration. For a = 1
// there is a closed form tied to the Renyi entropy of order 1 / (1 + t), and
// as t grows the solution approaches the merge-rule code.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "mergecode/codes.hpp"
#include "mergecode/distributions.hpp"
#include "mergecode/error.hpp"
#include "mergecode/numeric.hpp"

namespace mergecode {

struct TiltedSolution {
  double t = 0.0;
  double alpha = 0.0;
  CodeLengths lengths;
  std::vector<double> nu;     // tilted distribution at the returned lengths
  std::size_t iterations = 0;
  double residual = 0.0;      // sup-norm of the last length update
  bool converged = false;
};

struct ExpPayoffReport {
  double t = 0.0;
  double alpha = 0.0;
  double payoff_t = 0.0;
  double exp_term = 0.0;      // (1/t) log_D sum p D^{t l}
  double avg_length = 0.0;
  std::optional<double> renyi;  // H_{1/(1+t)}(p), for t > 0
};

struct FixedPointOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
};

namespace detail {

inline void require_t(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(Errc::InvalidParam, "t must be a finite non-negative number");
  }
}

}  // namespace detail

/// nu(x) = p(x) D^{t l(x)} / sum_y p(y) D^{t l(y)}, normalized in log space.
inline std::vector<double> tilt(const ProbabilityVector& p, std::span<const double> lengths, double t) {
  const double ln_d = std::log(static_cast<double>(p.radix));
  std::vector<double> log_w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    log_w[i] = std::log(p.probs[i]) + t * lengths[i] * ln_d;
  }
  const double log_z = log_sum_exp(log_w);
  for (double& v : log_w) v = std::exp(v - log_z);
  return log_w;
}

/// Renyi entropy of order a (a > 0, a != 1), base D.
inline double renyi_entropy(const ProbabilityVector& p, double a) {
  if (!(a > 0.0) || a == 1.0 || !std::isfinite(a)) {
    throw Error(Errc::InvalidParam, "Renyi order must be positive and different from 1");
  }
  std::vector<double> terms(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) terms[i] = a * std::log(p.probs[i]);
  return log_sum_exp(terms) / ((1.0 - a) * std::log(static_cast<double>(p.radix)));
}

/// Closed-form optimum for alpha = 1:
///   l(x) = -(1/(1+t)) log_D p(x) + log_D sum_y p(y)^{1/(1+t)}.
inline CodeLengths closed_form_alpha1(const ProbabilityVector& p, double t) {
  detail::require_t(t);
  const double a = 1.0 / (1.0 + t);
  const double ln_d = std::log(static_cast<double>(p.radix));
  std::vector<double> terms(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) terms[i] = a * std::log(p.probs[i]);
  const double shift = log_sum_exp(terms) / ln_d;
  std::vector<double> lengths(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) lengths[i] = -terms[i] / ln_d + shift;
  return make_code_lengths(std::move(lengths), p.radix);
}

/// (1/t) log_D sum p D^{t l}; the average length when t == 0.
inline double exp_term(std::span<const double> lengths, const ProbabilityVector& p, double t) {
  detail::require_t(t);
  if (lengths.size() != p.size()) {
    throw Error(Errc::SizeMismatch, "exp_term: lengths and distribution differ in size");
  }
  if (t == 0.0) {
    double avg = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) avg += p.probs[i] * lengths[i];
    return avg;
  }
  const double ln_d = std::log(static_cast<double>(p.radix));
  std::vector<double> terms(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    terms[i] = std::log(p.probs[i]) + t * lengths[i] * ln_d;
  }
  return log_sum_exp(terms) / (t * ln_d);
}

inline ExpPayoffReport payoff_t(const CodeLengths& lengths, const ProbabilityVector& p, double t,
                                double alpha) {
  require_alpha(alpha);
  ExpPayoffReport r;
  r.t = t;
  r.alpha = alpha;
  r.exp_term = exp_term(lengths.real_lengths, p, t);
  for (std::size_t i = 0; i < p.size(); ++i) r.avg_length += p.probs[i] * lengths.real_lengths[i];
  r.payoff_t = alpha * r.exp_term + (1.0 - alpha) * r.avg_length;
  if (t > 0.0) r.renyi = renyi_entropy(p, 1.0 / (1.0 + t));
  return r;
}

/// Solve D^-l = alpha * nu(l) + (1 - alpha) * p by fixed-point iteration
/// started from the Shannon lengths. Whenever the update fails to shrink, the
/// step length is halved and stays halved. On exhaustion the last iterate is
/// returned with converged == false.
inline TiltedSolution solve_two_parameter(const ProbabilityVector& p, double t, double alpha,
                                          FixedPointOptions options = {}) {
  detail::require_t(t);
  require_alpha(alpha);
  if (!(options.tol > 0.0)) throw Error(Errc::InvalidParam, "tolerance must be positive");

  const std::size_t n = p.size();
  std::vector<double> lengths(n);
  for (std::size_t i = 0; i < n; ++i) lengths[i] = -log_radix(p.probs[i], p.radix);

  TiltedSolution sol;
  sol.t = t;
  sol.alpha = alpha;
  std::vector<double> updated(n);
  double step = 1.0;
  double previous = std::numeric_limits<double>::infinity();

  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    const std::vector<double> nu = tilt(p, lengths, t);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      updated[i] = -log_radix(alpha * nu[i] + (1.0 - alpha) * p.probs[i], p.radix);
      residual = std::max(residual, std::abs(updated[i] - lengths[i]));
    }
    sol.iterations = iter;
    sol.residual = residual;
    if (residual <= options.tol) {
      sol.converged = true;
      break;
    }
    if (residual >= previous) step *= 0.5;
    previous = residual;
    for (std::size_t i = 0; i < n; ++i) lengths[i] += step * (updated[i] - lengths[i]);
  }

  // `updated` is -log_D of a distribution, so its Kraft sum is one.
  for (double& l : updated) l = l == 0.0 ? 0.0 : l;
  sol.lengths = make_code_lengths(updated, p.radix);
  sol.nu = tilt(p, sol.lengths.real_lengths, t);
  return sol;
}

}  // namespace mergecode
