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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "mergecode/codes.hpp"
#include "mergecode/exp_payoff.hpp"
#include "test_support.hpp"

namespace mergecode {
namespace {

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Newton's method on D^-l - alpha nu(l) - (1 - alpha) p = 0 with a
// finite-difference Jacobian, started from the Shannon lengths.
std::vector<double> newton_root(const ProbabilityVector& p, double t, double alpha) {
  const std::size_t n = p.size();
  const double d = static_cast<double>(p.radix);
  auto residual = [&](const Eigen::VectorXd& l) {
    std::vector<double> lengths(l.data(), l.data() + n);
    const std::vector<double> nu = tilt(p, lengths, t);
    Eigen::VectorXd f(n);
    for (std::size_t i = 0; i < n; ++i) {
      f(i) = std::pow(d, -l(i)) - alpha * nu[i] - (1.0 - alpha) * p.probs[i];
    }
    return f;
  };
  Eigen::VectorXd l(n);
  for (std::size_t i = 0; i < n; ++i) l(i) = -std::log(p.probs[i]) / std::log(d);
  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::VectorXd f = residual(l);
    if (f.lpNorm<Eigen::Infinity>() < 1e-15) break;
    Eigen::MatrixXd jac(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      Eigen::VectorXd probe = l;
      const double h = 1e-7 * std::max(1.0, std::abs(l(j)));
      probe(j) += h;
      jac.col(j) = (residual(probe) - f) / h;
    }
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-f);
    double s = 1.0;
    while (s > 1e-6 && residual(l + s * step).norm() >= f.norm()) s *= 0.5;
    l += s * step;
  }
  return {l.data(), l.data() + n};
}

double mean(const ProbabilityVector& p, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p.probs[i] * v[i];
  return s;
}

TEST(SolveTwoParameter, AlphaZeroIsShannon) {
  const ProbabilityVector p = testing::example_two();
  for (double t : {0.0, 1.0, 50.0}) {
    const TiltedSolution sol = solve_two_parameter(p, t, 0.0);
    EXPECT_TRUE(sol.converged);
    EXPECT_EQ(sol.iterations, 1u);
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_NEAR(sol.lengths.real_lengths[i], -std::log2(p.probs[i]), 1e-12);
    }
  }
}

TEST(SolveTwoParameter, SymmetricPair) {
  const ProbabilityVector p = canonicalize({0.5, 0.5}, 2);
  for (double t : {0.5, 3.0, 100.0}) {
    for (double alpha : {0.0, 0.4, 1.0}) {
      const TiltedSolution sol = solve_two_parameter(p, t, alpha);
      for (double l : sol.lengths.real_lengths) EXPECT_NEAR(l, 1.0, 1e-12);
    }
  }
}

TEST(SolveTwoParameter, MatchesNewtonRoot) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const ProbabilityVector p = testing::random_distribution(rng, testing::random_size(rng, 2, 8));
    const double t = 1.0 + 99.0 * testing::random_unit(rng);
    const double alpha = testing::random_unit(rng);
    const std::vector<double> root = newton_root(p, t, alpha);
    const TiltedSolution sol = solve_two_parameter(p, t, alpha);
    ASSERT_TRUE(sol.converged);
    EXPECT_LE(sup_distance(sol.lengths.real_lengths, root), 1e-8) << "t " << t << " alpha " << alpha;
  }
}

TEST(SolveTwoParameter, LargeTApproachesMergeRule) {
  // At the first breakpoint the distance decays like log(t)/t; Newton on the
  // optimality system puts it at 0.0284 for t = 100.
  const ProbabilityVector p = testing::example_one();
  const OptimalCode code = optimal_code(p, 1.0 / 16);
  double previous = 1e9;
  for (double t : {10.0, 30.0, 100.0, 1000.0, 10000.0}) {
    const TiltedSolution sol = solve_two_parameter(p, t, 1.0 / 16);
    ASSERT_TRUE(sol.converged);
    const double d = sup_distance(sol.lengths.real_lengths, code.lengths.real_lengths);
    EXPECT_LT(d, previous);
    EXPECT_LE(d, std::log2(t) / t) << t;
    if (t == 100.0) {
      EXPECT_NEAR(d, sup_distance(newton_root(p, t, 1.0 / 16), code.lengths.real_lengths), 1e-8);
      EXPECT_NEAR(d, 0.0284, 1e-3);
    }
    previous = d;
  }
}

TEST(SolveTwoParameter, Errors) {
  const ProbabilityVector p = testing::example_one();
  try {
    solve_two_parameter(p, -1.0, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidParam);
  }
  EXPECT_THROW(solve_two_parameter(p, 1.0, 1.5), Error);
  EXPECT_THROW(solve_two_parameter(p, 1.0, 0.5, {.tol = 0.0}), Error);
}

TEST(SolveTwoParameter, ReportsExhaustion) {
  const ProbabilityVector p = testing::example_two();
  const TiltedSolution sol = solve_two_parameter(p, 20.0, 0.7, {.tol = 1e-14, .max_iter = 3});
  EXPECT_FALSE(sol.converged);
  EXPECT_EQ(sol.iterations, 3u);
  EXPECT_GT(sol.residual, 0.0);
  EXPECT_EQ(sol.lengths.real_lengths.size(), p.size());
}

class FixedPointSweep : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(FixedPointSweep, Invariants) {
  std::mt19937_64 rng(GetParam());
  const int radix = GetParam() % 3 == 0 ? 3 : 2;
  const ProbabilityVector p = testing::random_distribution(rng, testing::random_size(rng, 2, 10), radix);
  const double t = 0.1 + 20.0 * testing::random_unit(rng);
  const double alpha = testing::random_unit(rng);
  const TiltedSolution sol = solve_two_parameter(p, t, alpha);
  ASSERT_TRUE(sol.converged) << "t " << t << " alpha " << alpha;

  EXPECT_NEAR(std::accumulate(sol.nu.begin(), sol.nu.end(), 0.0), 1.0, 1e-12);
  EXPECT_NEAR(sol.lengths.kraft_real, 1.0, 1e-9);
  const double d = static_cast<double>(radix);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double lhs = std::pow(d, -sol.lengths.real_lengths[i]);
    EXPECT_NEAR(lhs, alpha * sol.nu[i] + (1.0 - alpha) * p.probs[i], 1e-9);
  }

  // The fixed point should not lose to the two endpoint codes.
  const double value = payoff_t(sol.lengths, p, t, alpha).payoff_t;
  std::vector<double> shannon;
  for (double q : p.probs) shannon.push_back(-log_radix(q, radix));
  EXPECT_LE(value, payoff_t(make_code_lengths(shannon, radix), p, t, alpha).payoff_t + 1e-9);
  EXPECT_LE(value, payoff_t(closed_form_alpha1(p, t), p, t, alpha).payoff_t + 1e-9);
}

TEST_P(FixedPointSweep, AlphaOneMatchesClosedForm) {
  std::mt19937_64 rng(GetParam() + 50);
  const ProbabilityVector p = testing::random_distribution(rng, testing::random_size(rng, 2, 10));
  for (double t : {0.5, 1.0, 2.0, 5.0}) {
    const TiltedSolution sol = solve_two_parameter(p, t, 1.0);
    ASSERT_TRUE(sol.converged);
    EXPECT_LE(sup_distance(sol.lengths.real_lengths, closed_form_alpha1(p, t).real_lengths), 1e-8);
  }
}

TEST_P(FixedPointSweep, ExpTermBehaviour) {
  std::mt19937_64 rng(GetParam() + 90);
  const ProbabilityVector p = testing::random_distribution(rng, testing::random_size(rng, 2, 10));
  std::vector<double> lengths;
  for (std::size_t i = 0; i < p.size(); ++i) lengths.push_back(0.5 + 6.0 * testing::random_unit(rng));
  const double top = *std::max_element(lengths.begin(), lengths.end());
  const double log_n = std::log2(static_cast<double>(p.size()));

  double previous = exp_term(lengths, p, 0.0);
  EXPECT_NEAR(previous, mean(p, lengths), 1e-12);
  for (double t : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0, 1000.0}) {
    const double e = exp_term(lengths, p, t);
    EXPECT_GE(e, previous - 1e-12);
    EXPECT_LE(e, top + 1e-12);
    EXPECT_TRUE(std::isfinite(e));
    previous = e;
  }
  // Tail of the limit: only the mass on the longest word is lost.
  for (double t : {50.0, 200.0, 1000.0}) {
    const double e = exp_term(lengths, p, t);
    const auto it = std::max_element(lengths.begin(), lengths.end());
    const double lost = -std::log2(p.probs[static_cast<std::size_t>(it - lengths.begin())]) / t;
    EXPECT_LE(top - e, lost + 1e-12);
  }
  // Equal lengths collapse the bound to log_D |X| / t.
  const std::vector<double> flat(p.size(), log_n);
  EXPECT_NEAR(exp_term(flat, p, 1000.0), log_n, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, FixedPointSweep, ::testing::Range<std::uint64_t>(700, 730));

TEST(ClosedFormAlpha1, Examples) {
  const ProbabilityVector p = canonicalize({0.5, 0.25, 0.25}, 2);
  const CodeLengths c = closed_form_alpha1(p, 1.0);
  EXPECT_NEAR(c.real_lengths[0], 1.271553303163612, 1e-12);
  EXPECT_NEAR(c.real_lengths[1], 1.771553303163612, 1e-12);
  EXPECT_NEAR(c.kraft_real, 1.0, 1e-12);
  const TiltedSolution sol = solve_two_parameter(p, 1.0, 1.0);
  EXPECT_LE(sup_distance(sol.lengths.real_lengths, c.real_lengths), 1e-9);

  const ProbabilityVector q = testing::example_two();
  const CodeLengths shannon = closed_form_alpha1(q, 0.0);
  for (std::size_t i = 0; i < q.size(); ++i) EXPECT_NEAR(shannon.real_lengths[i], -std::log2(q.probs[i]), 1e-12);

  for (double t : {0.3, 4.0, 80.0}) {
    for (double l : closed_form_alpha1(testing::uniform(4), t).real_lengths) EXPECT_NEAR(l, 2.0, 1e-12);
  }
}

TEST(RenyiEntropy, Examples) {
  EXPECT_NEAR(renyi_entropy(testing::uniform(8), 0.5), 3.0, 1e-12);
  EXPECT_NEAR(renyi_entropy(testing::uniform(8), 3.0), 3.0, 1e-12);
  EXPECT_NEAR(renyi_entropy(canonicalize({0.5, 0.5}, 2), 0.5), 1.0, 1e-12);
  EXPECT_NEAR(renyi_entropy(canonicalize({0.5, 0.25, 0.25}, 2), 0.5), 1.5431066063272239, 1e-12);
  for (double bad : {1.0, 0.0, -2.0}) {
    try {
      renyi_entropy(testing::uniform(2), bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::InvalidParam);
    }
  }
}

TEST(RenyiEntropy, WithinRange) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const ProbabilityVector p = testing::random_distribution(rng, testing::random_size(rng, 1, 20));
    const double a = 0.05 + 3.0 * testing::random_unit(rng);
    const double h = renyi_entropy(p, a == 1.0 ? 0.5 : a);
    EXPECT_GE(h, -1e-12);
    EXPECT_LE(h, std::log2(static_cast<double>(p.size())) + 1e-12);
  }
}

TEST(PayoffT, Examples) {
  std::mt19937_64 rng(3);
  const ProbabilityVector p = testing::random_distribution(rng, 6);
  const CodeLengths flat = make_code_lengths(std::vector<double>(6, 2.5), 2);
  for (double t : {0.0, 0.7, 30.0}) {
    const ExpPayoffReport r = payoff_t(flat, p, t, 0.35);
    EXPECT_NEAR(r.payoff_t, 2.5, 1e-12);
    EXPECT_NEAR(r.payoff_t, 0.35 * r.exp_term + 0.65 * r.avg_length, 1e-12);
    EXPECT_EQ(r.renyi.has_value(), t > 0.0);
  }
  EXPECT_THROW(payoff_t(make_code_lengths({1.0}, 2), p, 1.0, 0.5), Error);
}

TEST(PayoffT, ExponentialTermOfCeiledClosedForm) {
  // The exponential term of the ceiled alpha = 1 code lies in [H_a, H_a + 1).
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const ProbabilityVector p = testing::random_distribution(rng, testing::random_size(rng, 2, 12));
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
      const CodeLengths c = closed_form_alpha1(p, t);
      const double h = renyi_entropy(p, 1.0 / (1.0 + t));
      EXPECT_NEAR(exp_term(c.real_lengths, p, t), h, 1e-9);
      const double e = exp_term(c.int_lengths, p, t);
      EXPECT_GE(e, h - 1e-12);
      EXPECT_LT(e, h + 1.0);
    }
  }
}

TEST(PayoffT, AverageOfCeiledClosedFormCanFallBelowRenyi) {
  // The average of the ceiled lengths is not bounded below by H_a in general.
  const ProbabilityVector p = canonicalize({2.0 / 3, 1.0 / 6, 1.0 / 6}, 2);
  const CodeLengths c = closed_form_alpha1(p, 1.0);
  EXPECT_EQ(c.int_lengths, (std::vector<double>{1, 2, 2}));
  EXPECT_LT(mean(p, c.int_lengths), renyi_entropy(p, 0.5));
  EXPECT_LT(mean(p, c.int_lengths), renyi_entropy(p, 0.5) + 1.0);
}

}  // namespace
}  // namespace mergecode
