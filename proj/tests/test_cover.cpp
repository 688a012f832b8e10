#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "offtarget/cover.hpp"
#include "offtarget/errors.hpp"
#include "offtarget/generators.hpp"
#include "oracles.hpp"

namespace offtarget {
namespace {

using namespace offtarget::testing;

CutViaLpHooks cover_everything(std::size_t m, std::vector<std::size_t>* log) {
  CutViaLpHooks hooks;
  hooks.execute = [m, log](std::size_t i) {
    log->push_back(i);
    std::vector<std::size_t> all(m);
    for (std::size_t j = 0; j < m; ++j) all[j] = j;
    return all;
  };
  hooks.abort = [] { return false; };
  hooks.resolved = [] { return false; };
  return hooks;
}

TEST(CutViaLp, RoundingTargetForTwoTargets) {
  // x = 1 for d = 2: y = 9 ln 2 = 6.238..., six sure runs plus Bernoulli(0.238...).
  const std::vector<double> coverage{1.0, 1.0}, w{1.0};
  const double frac = 9.0 * std::log(2.0) - 6.0;
  int sevens = 0;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::size_t> log;
    Rng policy(static_cast<std::uint64_t>(t));
    const CutViaLpReport r = cut_via_lp_core(1, 2, coverage, w, cover_everything(2, &log), policy);
    ASSERT_EQ(r.rounds, 1u);
    ASSERT_TRUE(log.size() == 6 || log.size() == 7);
    sevens += log.size() == 7 ? 1 : 0;
  }
  EXPECT_NEAR(sevens / static_cast<double>(trials), frac, 0.01);
}

TEST(CutViaLp, DeterministicCoverFinishesInOneRound) {
  const Dag truth = running_example();
  Simulator sim(truth, make_on_target(skeleton(truth)), Rng(1, 0));
  Rng policy(1, 1);
  const std::vector<Arc> c = covered_edges(truth);
  std::vector<Edge> targets;
  for (const Arc& x : c) targets.push_back(x.edge());
  const CutViaLpReport r = cut_via_lp(sim, targets, policy);
  EXPECT_EQ(r.rounds, 1u);
  for (const Edge& e : targets) EXPECT_TRUE(sim.state().is_cut(*sim.state().skeleton().edge_id(e.u, e.v)));
}

TEST(CutViaLp, SingleHalfProbabilityEdgeMeanCost) {
  const CoverInstance inst = make_cover_instance(1, {1.0}, {Empirical{{{{0}, 0.5}, {{}, 0.5}}}});
  double total = 0.0;
  const int runs = 500;
  for (int t = 0; t < runs; ++t) total += simulate_cover(inst, Rng(t, 0), Rng(t, 1)).cost;
  const double mean = total / runs;
  EXPECT_GE(mean, 0.99 * 2.0);
  EXPECT_LE(mean, 2.0 * 12.0 * std::log(2.0));
}

TEST(CutViaLp, UnreachableTargetThrows) {
  const Dag truth(3, {{0, 1}, {1, 2}});
  ActionSet actions{skeleton(truth), {1.0}, {Deterministic{{0, 1, 2}}}};
  Simulator sim(truth, actions, Rng(0));
  Rng policy(1);
  const std::vector<Edge> targets{{0, 1}};
  EXPECT_THROW(cut_via_lp(sim, targets, policy), UnreachableEdge);
}

TEST(CutViaLp, EarlyExitNeverCostsMore) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const Dag truth = gen_gnp_tree(12, 0.2, rng);
    const ActionSet actions = make_rhop(skeleton(truth), 1);
    std::vector<Edge> targets;
    for (const Arc& x : covered_edges(truth)) targets.push_back(x.edge());
    Simulator plain(truth, actions, Rng(t, 0));
    Simulator early(truth, actions, Rng(t, 0));
    Rng p1(t, 1), p2(t, 1);
    const double c1 = cut_via_lp(plain, targets, p1).cost;
    CutViaLpOptions opts;
    opts.stop_when_resolved = true;
    const double c2 = cut_via_lp(early, targets, p2, opts).cost;
    EXPECT_LE(c2, c1);
    EXPECT_TRUE(early.recovered());
  }
}

TEST(VerificationBound, HardnessStar) {
  for (int n : {4, 8, 64}) {
    const HardnessStar leaf = gen_hardness_star(n, 0);
    EXPECT_EQ(verification_lower_bound(leaf.truth, leaf.actions, {.exact = true}), 1.0);
    const HardnessStar centre = gen_hardness_star(n, n - 1);
    EXPECT_EQ(covered_edges(centre.truth).size(), static_cast<std::size_t>(n - 1));
    EXPECT_EQ(verification_lower_bound(centre.truth, centre.actions, {.exact = true}), n - 1.0);
  }
}

TEST(VerificationBound, DependsOnTheGraphNotTheState) {
  // Even once a state is fully oriented, verifying still means cutting the
  // covered edges, so the bound is the same LP.
  const Dag truth = running_example();
  const ActionSet actions = make_rhop(skeleton(truth), 1);
  std::vector<Edge> targets;
  for (const Arc& x : covered_edges(truth)) targets.push_back(x.edge());
  const double direct = solve_vlp(cut_probabilities(actions, targets), actions.weights).objective;
  EXPECT_NEAR(verification_lower_bound(truth, actions), direct, 1e-12);
  EXPECT_GT(direct, 0.0);
}

TEST(Verify, TruthIsConfirmed) {
  const Dag truth = running_example();
  const VerifyResult r = verify(truth, truth, make_on_target(skeleton(truth)), Rng(1, 0), Rng(1, 1));
  EXPECT_TRUE(r.confirmed);
  EXPECT_TRUE(r.state.fully_oriented());
  EXPECT_EQ(to_dag(r.state), truth);
}

TEST(Verify, CuttingCoveredEdgesOrientsEverything) {
  const Dag truth = running_example();
  OrientationState s = essential_graph(truth);
  for (const Arc& x : covered_edges(truth)) {
    s = apply_intervention(s, truth, {x.from});
  }
  EXPECT_TRUE(s.fully_oriented());
}

TEST(Verify, WrongStarRootIsRefuted) {
  const HardnessStar hyp = gen_hardness_star(6, 0);
  const HardnessStar truth = gen_hardness_star(6, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const VerifyResult r = verify(hyp.truth, truth.truth, truth.actions, Rng(seed, 0), Rng(seed, 1));
    EXPECT_FALSE(r.confirmed);
    EXPECT_FALSE(agrees_with(r.state, hyp.truth));
  }
}

TEST(Verify, DifferentVStructuresRefutedWithoutActing) {
  const Dag hyp(3, {{0, 1}, {2, 1}});
  const Dag truth = path3();
  const VerifyResult r = verify(hyp, truth, make_on_target(skeleton(truth)), Rng(0), Rng(1));
  EXPECT_FALSE(r.confirmed);
  EXPECT_TRUE(r.trace.steps.empty());
}

TEST(Reductions, VerificationToCoverRelabelsCoveredEdges) {
  const Dag truth = running_example();
  const ActionSet actions = make_rhop(skeleton(truth), 1);
  const CoverInstance inst = verification_to_cover(truth, actions);
  const std::vector<Arc> c = covered_edges(truth);
  ASSERT_EQ(inst.d, c.size());
  ASSERT_EQ(inst.k(), actions.size());
  for (std::size_t i = 0; i < inst.k(); ++i) {
    for (std::size_t j = 0; j < inst.d; ++j) {
      EXPECT_NEAR(inst.mu(i, j), cut_probability(actions.dists[i], c[j].edge()), 1e-15);
    }
  }
}

TEST(Reductions, DeterministicActionsGiveDeterministicCover) {
  const Dag truth = running_example();
  const CoverInstance inst = verification_to_cover(truth, make_on_target(skeleton(truth)));
  for (double mu : inst.coverage) EXPECT_TRUE(mu == 0.0 || mu == 1.0);
  for (const Empirical& set : inst.sets) EXPECT_EQ(set.outcomes.size(), 1u);
}

TEST(Reductions, CoverToVerificationShape) {
  const CoverInstance inst = make_cover_instance(
      3, {1.0, 2.0}, {Empirical{{{{0, 1}, 0.5}, {{2}, 0.5}}}, Empirical{{{{0, 1, 2}, 1.0}}}});
  const auto [g, actions] = cover_to_verification(inst);
  EXPECT_EQ(g.num_vertices(), 6);
  EXPECT_EQ(g.num_arcs(), 3u);
  EXPECT_EQ(covered_edges(g).size(), 3u);
  const CoverInstance back = verification_to_cover(g, actions);
  EXPECT_EQ(back.coverage, inst.coverage);
  EXPECT_EQ(back.weights, inst.weights);
}

TEST(Reductions, SingletonCoverNeedsOneAction) {
  const CoverInstance inst = make_cover_instance(1, {1.0}, {Empirical{{{{0}, 1.0}}}});
  const auto [g, actions] = cover_to_verification(inst);
  CutViaLpOptions opts;
  opts.stop_when_resolved = true;
  const VerifyResult r = verify(g, g, actions, Rng(0), Rng(1), opts);
  EXPECT_TRUE(r.confirmed);
  EXPECT_EQ(r.trace.steps.size(), 1u);
}

// Driving the same cover instance directly and through its graph encoding
// consumes both random streams identically.
TEST(Reductions, CoverAndGraphRunsAreCoupled) {
  Rng rng(6);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 1 + rng.below(6), k = 1 + rng.below(5);
    std::vector<Empirical> sets(k);
    for (auto& set : sets) {
      VertexSet a, b;
      for (std::size_t j = 0; j < d; ++j) {
        if (rng.bernoulli(0.5)) a.push_back(static_cast<Vertex>(j));
        if (rng.bernoulli(0.3)) b.push_back(static_cast<Vertex>(j));
      }
      const double p = rng.uniform();
      set.outcomes = {{a, p}, {b, 1.0 - p}};
    }
    sets[0].outcomes[0].first.clear();
    for (std::size_t j = 0; j < d; ++j) sets[0].outcomes[0].first.push_back(static_cast<Vertex>(j));
    sets[0].outcomes[0].second = std::max(sets[0].outcomes[0].second, 0.1);
    sets[0].outcomes[1].second = 1.0 - sets[0].outcomes[0].second;
    const CoverInstance inst = make_cover_instance(d, std::vector<double>(k, 1.0), sets);
    const auto [g, actions] = cover_to_verification(inst);
    const CoverRun direct = simulate_cover(inst, Rng(t, 0), Rng(t, 1));
    Simulator sim(g, actions, Rng(t, 0));
    Rng policy(t, 1);
    std::vector<Edge> targets;
    for (const Arc& x : g.arcs()) targets.push_back(x.edge());
    const CutViaLpReport via_graph = cut_via_lp(sim, targets, policy);
    EXPECT_EQ(direct.cost, via_graph.cost);
    EXPECT_EQ(direct.executions, via_graph.executions);
  }
}

}  // namespace
}  // namespace offtarget
