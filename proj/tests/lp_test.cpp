#include "persuasion/lp.hpp"

#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace {

using persuasion::LpProblem;
using persuasion::LpSolution;
using persuasion::LpStatus;
using persuasion::solve;

TEST(Simplex, SimpleBoundedMaximum) {
  LpProblem p;
  p.num_vars = 2;
  p.objective = {1.0, 1.0};
  p.G = {{-1.0, -1.0}};  // x1 + x2 <= 1
  p.h = {-1.0};
  const LpSolution sol = solve(p);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_NEAR(sol.value, 1.0, 1e-9);
}

TEST(Simplex, TwoConstraintVertex) {
  LpProblem p;
  p.num_vars = 2;
  p.objective = {3.0, 2.0};
  p.G = {{-1.0, -1.0}, {-1.0, 0.0}};  // x1 + x2 <= 4, x1 <= 2
  p.h = {-4.0, -2.0};
  const LpSolution sol = solve(p);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_NEAR(sol.value, 10.0, 1e-9);
  EXPECT_NEAR(sol.x[0], 2.0, 1e-9);
  EXPECT_NEAR(sol.x[1], 2.0, 1e-9);
}

TEST(Simplex, DetectsInfeasible) {
  LpProblem p;
  p.num_vars = 1;
  p.objective = {1.0};
  p.G = {{1.0}, {-1.0}};  // x1 >= 1 and -x1 >= 0
  p.h = {1.0, 0.0};
  EXPECT_EQ(solve(p).status, LpStatus::infeasible);
}

TEST(Simplex, DetectsUnbounded) {
  LpProblem p;
  p.num_vars = 1;
  p.objective = {1.0};
  EXPECT_EQ(solve(p).status, LpStatus::unbounded);

  p.G = {{1.0}};  // x1 >= 1 does not bound the maximum
  p.h = {1.0};
  EXPECT_EQ(solve(p).status, LpStatus::unbounded);
}

TEST(Simplex, EqualityRows) {
  LpProblem p;
  p.num_vars = 2;
  p.objective = {1.0, 0.0};
  p.A = {{1.0, 1.0}};
  p.b = {1.0};
  const LpSolution sol = solve(p);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_NEAR(sol.value, 1.0, 1e-9);
  EXPECT_NEAR(sol.x[0], 1.0, 1e-9);
}

TEST(Simplex, RedundantAndZeroRowsAreHarmless) {
  LpProblem p;
  p.num_vars = 2;
  p.objective = {1.0, 2.0};
  p.A = {{1.0, 1.0}, {1.0, 1.0}, {2.0, 2.0}};  // same plane three times
  p.b = {1.0, 1.0, 2.0};
  p.G = {{0.0, 0.0}};  // vacuous row
  p.h = {0.0};
  const LpSolution sol = solve(p);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_NEAR(sol.value, 2.0, 1e-9);
}

TEST(Simplex, NegativeRightHandSides) {
  LpProblem p;
  p.num_vars = 1;
  p.objective = {-1.0};
  p.A = {{-1.0}};
  p.b = {-2.0};
  const LpSolution sol = solve(p);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_NEAR(sol.x[0], 2.0, 1e-12);
  EXPECT_NEAR(sol.value, -2.0, 1e-12);
}

TEST(Simplex, RejectsMalformedDimensions) {
  LpProblem p;
  p.num_vars = 2;
  p.objective = {1.0};
  EXPECT_THROW(solve(p), std::invalid_argument);
  p.objective = {1.0, 1.0};
  p.G = {{1.0}};
  p.h = {0.0};
  EXPECT_THROW(solve(p), std::invalid_argument);
  p.G = {{1.0, 1.0}};
  p.h = {0.0, 1.0};
  EXPECT_THROW(solve(p), std::invalid_argument);
}

TEST(Simplex, DeterministicAcrossRepeatSolves) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const LpProblem p = oracle::random_lp(rng);
    const LpSolution a = solve(p);
    const LpSolution b = solve(p);
    ASSERT_EQ(a.status, b.status);
    ASSERT_EQ(a.x.size(), b.x.size());
    EXPECT_EQ(std::memcmp(a.x.data(), b.x.data(),
                          a.x.size() * sizeof(double)),
              0);
    EXPECT_EQ(std::memcmp(&a.value, &b.value, sizeof(double)), 0);
  }
}

TEST(Simplex, MatchesVertexEnumerationOnRandomProblems) {
  std::mt19937_64 rng(31337);
  int feasible_count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const LpProblem p = oracle::random_lp(rng);
    const oracle::LpOracleResult expected = oracle::lp_vertex_oracle(p);
    const LpSolution sol = solve(p);
    if (expected.feasible) {
      ++feasible_count;
      ASSERT_EQ(sol.status, LpStatus::optimal) << "trial " << trial;
      EXPECT_NEAR(sol.value, expected.value, 1e-6) << "trial " << trial;
    } else {
      EXPECT_EQ(sol.status, LpStatus::infeasible) << "trial " << trial;
    }
  }
  EXPECT_GT(feasible_count, 50);
}

TEST(Simplex, SolutionSatisfiesReportedConstraints) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const LpProblem p = oracle::random_lp(rng);
    const LpSolution sol = solve(p);
    if (sol.status != LpStatus::optimal) continue;
    for (double v : sol.x) EXPECT_GE(v, -1e-9);
    for (std::size_t i = 0; i < p.G.size(); ++i) {
      double dot = 0.0;
      for (std::size_t j = 0; j < p.num_vars; ++j)
        dot += p.G[i][j] * sol.x[j];
      EXPECT_GE(dot, p.h[i] - 1e-7);
    }
    for (std::size_t i = 0; i < p.A.size(); ++i) {
      double dot = 0.0;
      for (std::size_t j = 0; j < p.num_vars; ++j)
        dot += p.A[i][j] * sol.x[j];
      EXPECT_NEAR(dot, p.b[i], 1e-7);
    }
  }
}

}  // namespace
