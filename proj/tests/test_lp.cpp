#include <gtest/gtest.h>

#include "offtarget/errors.hpp"
#include "offtarget/lp.hpp"
#include "offtarget/rng.hpp"
#include "oracles.hpp"

namespace offtarget {
namespace {

TEST(CoveringLp, SingleEdgeHalfProbability) {
  const std::vector<double> a{0.5}, w{1.0};
  const LpSolution s = solve_covering_lp(1, 1, a, w);
  EXPECT_NEAR(s.x[0], 2.0, 1e-12);
  EXPECT_NEAR(s.objective, 2.0, 1e-12);
  EXPECT_TRUE(s.certified);
}

TEST(CoveringLp, TwoDisjointDeterministicActions) {
  const std::vector<double> a{1, 0, 0, 1}, w{1, 1};
  const LpSolution s = solve_covering_lp(2, 2, a, w);
  EXPECT_NEAR(s.x[0], 1.0, 1e-12);
  EXPECT_NEAR(s.x[1], 1.0, 1e-12);
  EXPECT_NEAR(s.objective, 2.0, 1e-12);
}

TEST(CoveringLp, NoTargetsCostsNothing) {
  const std::vector<double> w{1, 1};
  const LpSolution s = solve_covering_lp(2, 0, {}, w);
  EXPECT_EQ(s.objective, 0.0);
}

TEST(CoveringLp, UncoverableColumnThrows) {
  const std::vector<double> a{1, 0}, w{1};
  EXPECT_THROW(solve_covering_lp(1, 2, a, w), ContractViolation);
}

// Random instances against the basic-solution enumeration oracle.
TEST(CoveringLp, MatchesVertexEnumeration) {
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const std::size_t k = 1 + rng.below(5), m = 1 + rng.below(4);
    std::vector<double> a(k * m, 0.0), w(k);
    for (double& x : w) x = 0.5 + rng.uniform();
    for (double& x : a) x = rng.bernoulli(0.6) ? rng.uniform() : 0.0;
    for (std::size_t j = 0; j < m; ++j) a[rng.below(k) * m + j] += 0.05;  // keep columns coverable
    const double expected = oracle::covering_lp_value(k, m, a, w);
    const LpSolution s = solve_covering_lp(k, m, a, w);
    EXPECT_NEAR(s.objective, expected, 1e-9 * std::max(1.0, expected));
    // Primal feasibility and matching dual value, checked here, not trusted.
    for (std::size_t j = 0; j < m; ++j) {
      double cover = 0.0;
      for (std::size_t i = 0; i < k; ++i) cover += a[i * m + j] * s.x[i];
      EXPECT_GE(cover, 1.0 - 1e-9);
    }
    EXPECT_NEAR(s.dual_objective, s.objective, 1e-9 * std::max(1.0, expected));
  }
}

TEST(CoveringLp, ExactModeAgrees) {
  Rng rng(22);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 1 + rng.below(6), m = 1 + rng.below(6);
    std::vector<double> a(k * m), w(k, 1.0);
    for (double& x : a) x = static_cast<double>(rng.below(5)) / 4.0;
    for (std::size_t j = 0; j < m; ++j) a[j] = std::max(a[j], 0.25);
    const LpSolution fp = solve_covering_lp(k, m, a, w);
    const LpSolution ex = solve_covering_lp(k, m, a, w, {.exact = true});
    EXPECT_TRUE(ex.exact);
    EXPECT_NEAR(fp.objective, ex.objective, 1e-9);
  }
}

// Many identical columns and ties exercise the anti-cycling path.
TEST(CoveringLp, DegenerateInstance) {
  const std::size_t k = 6, m = 8;
  std::vector<double> a(k * m, 0.5), w(k, 1.0);
  const LpSolution s = solve_covering_lp(k, m, a, w);
  EXPECT_NEAR(s.objective, 2.0, 1e-9);
  EXPECT_TRUE(s.certified);
}

}  // namespace
}  // namespace offtarget
