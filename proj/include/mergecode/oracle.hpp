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

// Independent numerical oracle for the max/average pay-off.
//
// Solves the epigraph form
//
//     minimize   a * t + (1 - a) * sum_i p_i l_i
//     subject to l_i <= t,   sum_i D^-l_i <= 1
//
// with a log-barrier interior-point method (damped Newton steps on the
// barrier, tau multiplied by 10 per outer round). Nothing here uses the
// merging rule, so agreement with the closed form is a real check.
//
// The capped variant fixes t = L and minimizes the average length alone,
// which is the length-limited problem.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mergecode/codes.hpp"
#include "mergecode/distributions.hpp"
#include "mergecode/error.hpp"
#include "mergecode/numeric.hpp"

namespace mergecode {

struct OracleResult {
  CodeLengths lengths;
  double objective = 0.0;     // pay-off evaluated at `lengths`
  double duality_gap = 0.0;   // barrier bound m / tau at exit
  std::size_t iterations = 0; // Newton steps taken
  bool converged = false;
};

struct OracleOptions {
  std::size_t max_iterations = 5000;
  double gap_tolerance = 1e-10;
};

namespace detail {

class BarrierProblem {
 public:
  // cap: fixed maximum length, or nullopt to optimise t as well.
  BarrierProblem(const ProbabilityVector& p, double alpha, std::optional<double> cap)
      : p_(p.probs), n_(p.size()), ln_d_(std::log(static_cast<double>(p.radix))),
        alpha_(alpha), cap_(cap) {
    dim_ = cap_ ? n_ : n_ + 1;
    t_upper_ = -std::log(p_.back()) / ln_d_ + 2.0;
  }

  std::size_t dim() const { return dim_; }
  std::size_t barrier_terms() const { return cap_ ? n_ + 1 : n_ + 2; }

  Eigen::VectorXd cost() const {
    Eigen::VectorXd c(dim_);
    const double w = cap_ ? 1.0 : 1.0 - alpha_;
    for (std::size_t i = 0; i < n_; ++i) c(i) = w * p_[i];
    if (!cap_) c(n_) = alpha_;
    return c;
  }

  Eigen::VectorXd start() const {
    Eigen::VectorXd z(dim_);
    if (cap_) {
      const double mid = 0.5 * (std::log(static_cast<double>(n_)) / ln_d_ + *cap_);
      z.setConstant(mid);
      return z;
    }
    double top = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      z(i) = -std::log(p_[i]) / ln_d_ + 0.5;
      top = std::max(top, z(i));
    }
    z(n_) = top + 0.5;
    return z;
  }

  double max_length(const Eigen::VectorXd& z) const { return cap_ ? *cap_ : z(n_); }

  bool feasible(const Eigen::VectorXd& z) const {
    const double t = max_length(z);
    double kraft = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!(t - z(i) > 0.0)) return false;
      kraft += std::exp(-ln_d_ * z(i));
    }
    if (!(1.0 - kraft > 0.0)) return false;
    return cap_ || t_upper_ - z(n_) > 0.0;
  }

  double barrier(const Eigen::VectorXd& z) const {
    const double t = max_length(z);
    double value = 0.0;
    double kraft = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      value -= std::log(t - z(i));
      kraft += std::exp(-ln_d_ * z(i));
    }
    value -= std::log(1.0 - kraft);
    if (!cap_) value -= std::log(t_upper_ - z(n_));
    return value;
  }

  void derivatives(const Eigen::VectorXd& z, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    grad.setZero(dim_);
    hess.setZero(dim_, dim_);
    const double t = max_length(z);
    Eigen::VectorXd a(n_);
    double kraft = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double e = std::exp(-ln_d_ * z(i));
      kraft += e;
      a(i) = ln_d_ * e;
      const double inv = 1.0 / (t - z(i));
      grad(i) += inv;
      hess(i, i) += inv * inv;
      if (!cap_) {
        grad(n_) -= inv;
        hess(n_, n_) += inv * inv;
        hess(i, n_) -= inv * inv;
        hess(n_, i) -= inv * inv;
      }
    }
    const double slack = 1.0 - kraft;
    for (std::size_t i = 0; i < n_; ++i) {
      grad(i) -= a(i) / slack;
      hess(i, i) += ln_d_ * a(i) / slack;
    }
    hess.topLeftCorner(n_, n_) += (a * a.transpose()) / (slack * slack);
    if (!cap_) {
      const double inv = 1.0 / (t_upper_ - z(n_));
      grad(n_) += inv;
      hess(n_, n_) += inv * inv;
    }
  }

  std::vector<double> lengths(const Eigen::VectorXd& z) const {
    return std::vector<double>(z.data(), z.data() + n_);
  }

 private:
  std::vector<double> p_;
  std::size_t n_;
  std::size_t dim_;
  double ln_d_;
  double alpha_;
  std::optional<double> cap_;
  double t_upper_;
};

inline OracleResult run_barrier(const BarrierProblem& problem, const OracleOptions& options) {
  const Eigen::VectorXd c = problem.cost();
  Eigen::VectorXd z = problem.start();
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  OracleResult result;
  double tau = 1.0;
  const double m = static_cast<double>(problem.barrier_terms());

  while (true) {
    // centering
    for (int inner = 0; inner < 200; ++inner) {
      if (result.iterations >= options.max_iterations) {
        result.duality_gap = m / tau;
        result.lengths.real_lengths = problem.lengths(z);
        return result;
      }
      problem.derivatives(z, grad, hess);
      grad += tau * c;
      const Eigen::VectorXd step = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(step);
      ++result.iterations;
      if (!(decrement > 1e-14)) break;

      const double phi0 = tau * c.dot(z) + problem.barrier(z);
      double s = 1.0;
      Eigen::VectorXd trial = z + step;
      while (s > 1e-16) {
        if (problem.feasible(trial) &&
            tau * c.dot(trial) + problem.barrier(trial) <= phi0 - 0.25 * s * decrement) {
          break;
        }
        s *= 0.5;
        trial = z + s * step;
      }
      if (s <= 1e-16) break;
      z = trial;
      if (decrement < 1e-12) break;
    }
    if (m / tau < options.gap_tolerance) break;
    tau *= 10.0;
  }
  result.duality_gap = m / tau;
  result.converged = true;
  result.lengths.real_lengths = problem.lengths(z);
  return result;
}

}  // namespace detail

/// Numerically minimize the max/average pay-off without using the merging
/// rule. `max_iterations` bounds the total Newton steps; on exhaustion the
/// best iterate is returned with converged == false.
inline OracleResult brute_force_optimal(const ProbabilityVector& p, double alpha,
                                        std::size_t max_iterations = 5000) {
  require_alpha(alpha);
  if (p.size() == 1) {
    OracleResult r;
    r.lengths = make_code_lengths({0.0}, p.radix);
    r.converged = true;
    return r;
  }
  detail::BarrierProblem problem(p, alpha, std::nullopt);
  OracleResult r = detail::run_barrier(problem, {.max_iterations = max_iterations});
  r.lengths = make_code_lengths(std::move(r.lengths.real_lengths), p.radix);
  r.objective = payoff(r.lengths, p, alpha).payoff;
  return r;
}

/// Minimize the average length subject to max length <= l_lim.
inline OracleResult brute_force_limited(const ProbabilityVector& p, double l_lim,
                                        std::size_t max_iterations = 5000) {
  const double floor_length = log_radix(static_cast<double>(p.size()), p.radix);
  if (!(l_lim > floor_length)) {
    throw InfeasibleError("no code has maximum length below log_D |X|", floor_length);
  }
  if (p.size() == 1) {
    OracleResult r;
    r.lengths = make_code_lengths({0.0}, p.radix);
    r.converged = true;
    return r;
  }
  detail::BarrierProblem problem(p, 0.0, l_lim);
  OracleResult r = detail::run_barrier(problem, {.max_iterations = max_iterations});
  r.lengths = make_code_lengths(std::move(r.lengths.real_lengths), p.radix);
  r.objective = payoff(r.lengths, p, 0.0).avg_length;
  return r;
}

}  // namespace mergecode
