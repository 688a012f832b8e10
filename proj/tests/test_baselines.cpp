#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "offtarget/baselines.hpp"
#include "offtarget/errors.hpp"
#include "offtarget/generators.hpp"

namespace offtarget {
namespace {

using namespace offtarget::testing;

class FixedRequests : public OnTargetPolicy {
 public:
  explicit FixedRequests(std::vector<Vertex> v) : queue_(std::move(v)) {}
  std::optional<Vertex> next(const OrientationState&) override {
    if (cursor_ == queue_.size()) return std::nullopt;
    return queue_[cursor_++];
  }

 private:
  std::vector<Vertex> queue_;
  std::size_t cursor_ = 0;
};

TEST(Random, SingleEdgeOneAction) {
  const Dag truth(2, {{0, 1}});
  Simulator sim(truth, ActionSet{skeleton(truth), {1.0}, {Deterministic{{0}}}}, Rng(0));
  Rng policy(1);
  random_policy(sim, policy);
  EXPECT_EQ(sim.trace().total_cost, 1.0);
  EXPECT_TRUE(sim.recovered());
}

TEST(Random, FullyOrientedCostsNothing) {
  const Dag collider(3, {{0, 1}, {2, 1}});
  Simulator sim(collider, make_on_target(skeleton(collider)), Rng(0));
  Rng policy(1);
  random_policy(sim, policy);
  EXPECT_EQ(sim.trace().total_cost, 0.0);
}

TEST(Random, HardnessStarIsExpensive) {
  const int n = 16;
  const HardnessStar star = gen_hardness_star(n, 0);
  double total = 0.0;
  const int runs = 500;
  for (int r = 0; r < runs; ++r) {
    Simulator sim(star.truth, star.actions, Rng(r, 0));
    Rng policy(r, 1);
    random_policy(sim, policy);
    ASSERT_EQ(sim.result(), star.truth);
    total += sim.trace().total_cost;
  }
  EXPECT_GE(total / runs, n / 4.0);
}

TEST(Random, UnreachableUpFront) {
  const Dag truth = path3();
  Simulator sim(truth, ActionSet{skeleton(truth), {1.0}, {Deterministic{{0, 1, 2}}}}, Rng(0));
  Rng policy(1);
  EXPECT_THROW(random_policy(sim, policy), UnreachableEdge);
  EXPECT_TRUE(sim.trace().steps.empty());
}

TEST(OneShot, SingleEdge) {
  const Dag truth(2, {{0, 1}});
  Simulator sim(truth, ActionSet{skeleton(truth), {1.0}, {Deterministic{{1}}}}, Rng(0));
  Rng policy(1);
  EXPECT_EQ(one_shot_policy(sim, policy), 1u);
  EXPECT_EQ(sim.trace().total_cost, 1.0);
}

// Action 0 cuts {0,1} surely; action 1 cuts {1,2} with probability 1/3,
// so x* = (1, 3) and p = (1/4, 3/4).
ActionSet skewed_actions(const Dag& truth) {
  return ActionSet{skeleton(truth),
                   {1.0, 1.0},
                   {Deterministic{{0}}, Empirical{{{{2}, 1.0 / 3.0}, {{}, 2.0 / 3.0}}}}};
}

TEST(OneShot, DistributionFromLp) {
  const Dag truth = path3();
  const ActionSet actions = skewed_actions(truth);
  const std::vector<double> p = one_shot_distribution(essential_graph(truth), actions);
  EXPECT_NEAR(p[0], 0.25, 1e-12);
  EXPECT_NEAR(p[1], 0.75, 1e-12);
}

TEST(OneShot, SelectionFrequencies) {
  const Dag truth = path3();
  const ActionSet actions = skewed_actions(truth);
  int first_is_one = 0;
  const int runs = 100000;
  for (int r = 0; r < runs; ++r) {
    Simulator sim(truth, actions, Rng(r, 0));
    Rng policy(r, 1);
    one_shot_policy(sim, policy);
    first_is_one += sim.trace().steps.front().action == 1 ? 1 : 0;
  }
  EXPECT_NEAR(first_is_one / static_cast<double>(runs), 0.75, 0.02);
}

TEST(OneShot, OnTargetCouponCollection) {
  // Ordered 3-clique, unit on-target actions. The LP puts mass on the
  // middle vertex, which cuts both covered edges at once.
  const Dag truth = ordered_clique(3);
  const ActionSet actions = make_on_target(skeleton(truth));
  double total = 0.0;
  const int runs = 2000;
  for (int r = 0; r < runs; ++r) {
    Simulator sim(truth, actions, Rng(r, 0));
    Rng policy(r, 1);
    one_shot_policy(sim, policy);
    ASSERT_TRUE(sim.recovered());
    total += sim.trace().total_cost;
  }
  const std::vector<double> p = one_shot_distribution(essential_graph(truth), actions);
  // Every action drawn orients at least one of two edges; the run ends no
  // later than a coupon collector over the actions with positive mass.
  std::size_t support = 0;
  for (double x : p) support += x > 0 ? 1 : 0;
  double harmonic = 0.0;
  for (std::size_t j = 1; j <= support; ++j) harmonic += 1.0 / static_cast<double>(j);
  EXPECT_LE(total / runs, static_cast<double>(support) * harmonic + 0.1);
  EXPECT_GE(total / runs, 1.0);
}

TEST(Adapter, SingleVertexDeterministic) {
  const HardnessStar star = gen_hardness_star(7, 2);
  Simulator sim(star.truth, make_on_target(skeleton(star.truth)), Rng(0));
  Rng policy(1);
  FixedRequests inner({star.centre});
  const AdapterReport report = adapt_on_target(inner, sim, policy);
  EXPECT_EQ(report.requests, 1u);
  EXPECT_LE(sim.trace().steps.size(), 6u);
  EXPECT_TRUE(sim.recovered());
}

TEST(Adapter, SaturatedVertexIsFree) {
  const Dag collider(3, {{0, 1}, {2, 1}});
  Simulator sim(collider, make_on_target(skeleton(collider)), Rng(0));
  Rng policy(1);
  FixedRequests inner({1, 0});
  const AdapterReport report = adapt_on_target(inner, sim, policy);
  EXPECT_EQ(report.requests, 2u);
  EXPECT_EQ(report.lps_solved, 0u);
  EXPECT_TRUE(sim.trace().steps.empty());
}

TEST(Adapter, SkipsLocallyInfeasibleVertex) {
  // Only action: intervene on {0, 1}; edge {0,1} can never be cut.
  const Dag truth = path3();
  Simulator sim(truth, ActionSet{skeleton(truth), {1.0}, {Deterministic{{0, 1}}}}, Rng(0));
  Rng policy(1);
  FixedRequests inner({0});
  const AdapterReport report = adapt_on_target(inner, sim, policy);
  EXPECT_EQ(report.warnings.size(), 1u);
  EXPECT_TRUE(sim.trace().steps.empty());
}

TEST(Adapter, SeparatorInnerRecoversRandomTruths) {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const Dag truth = gen_gnp_tree(4 + static_cast<int>(rng.below(30)), 0.1, rng);
    const UndirectedGraph host = skeleton(truth);
    for (const ActionSet& actions : {make_rhop(host, 1), make_decaying(host, 0.9), make_fathand(host, 0.9)}) {
      Simulator sim(truth, actions, Rng(t, 0));
      Rng policy(t, 1);
      SeparatorOnTarget inner;
      adapt_on_target(inner, sim, policy);
      ASSERT_TRUE(sim.recovered());
      EXPECT_EQ(sim.result(), truth);
    }
  }
}

}  // namespace
}  // namespace offtarget
