#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "offtarget/errors.hpp"
#include "offtarget/generators.hpp"
#include "offtarget/mec.hpp"
#include "offtarget/ordering.hpp"
#include "oracles.hpp"

namespace offtarget {
namespace {

using namespace offtarget::testing;

// Same skeleton and same v-structures, checked test-side.
bool in_class(const Dag& candidate, const Dag& truth) {
  const int n = truth.num_vertices();
  std::set<Edge> x, y;
  for (const Arc& arc : candidate.arcs()) x.insert(arc.edge());
  for (const Arc& arc : truth.arcs()) y.insert(arc.edge());
  return x == y && oracle::v_structures(n, candidate.arcs()) == oracle::v_structures(n, truth.arcs());
}

TEST(Ordering, FullyOrientedGivesTheDagItself) {
  const Dag truth = running_example();
  OrientationState s(skeleton(truth));
  for (const Arc& x : truth.arcs()) s.orient(x.from, x.to);
  EXPECT_EQ(consistent_extension(s), truth);
}

TEST(Ordering, ConstraintIsHonouredAndStaysInClass) {
  const Dag truth = running_example();
  const OrderingConstraint dg{d, g};
  const Dag out = consistent_extension(essential_graph(truth), {&dg, 1});
  EXPECT_TRUE(out.has_arc(d, g));
  EXPECT_TRUE(in_class(out, truth));
  const OrderingConstraint gd{g, d};
  const Dag flipped = consistent_extension(essential_graph(truth), {&gd, 1});
  EXPECT_TRUE(flipped.has_arc(g, d));
  EXPECT_TRUE(in_class(flipped, truth));
}

TEST(Ordering, SourceConstraintMakesCliqueSource) {
  const Dag truth = ordered_clique(5);
  const OrientationState s = essential_graph(truth);
  std::vector<OrderingConstraint> first;
  for (Vertex v = 0; v < 5; ++v) {
    if (v != 3) first.push_back({3, v});
  }
  const Dag out = consistent_extension(s, first);
  EXPECT_TRUE(out.parents(3).empty());
  EXPECT_EQ(out.children(3).size(), 4u);
}

TEST(Ordering, InfeasibleConstraints) {
  const OrientationState s = essential_graph(path3());
  const std::vector<OrderingConstraint> cycle{{0, 1}, {1, 0}};
  EXPECT_THROW(consistent_ordering(s, cycle), InfeasibleOrdering);
  // 0 and 2 before 1 would make a collider at 1.
  const std::vector<OrderingConstraint> collider{{0, 1}, {2, 1}};
  EXPECT_THROW(consistent_ordering(s, collider), InfeasibleOrdering);
  // Contradicting an oriented arc.
  const Dag truth(3, {{0, 2}, {1, 2}});
  const OrderingConstraint against{2, 0};
  EXPECT_THROW(consistent_ordering(essential_graph(truth), {&against, 1}), InfeasibleOrdering);
}

TEST(Ordering, RandomExtensionsStayInClass) {
  Rng rng(8);
  for (int t = 0; t < 150; ++t) {
    const Dag truth = gen_gnp_tree(3 + static_cast<int>(rng.below(6)), 0.3, rng);
    OrientationState s = essential_graph(truth);
    const Vertex z = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(truth.num_vertices())));
    std::vector<OrderingConstraint> hints;
    for (Vertex w : s.undirected_neighbors(z)) hints.push_back({z, w});
    Dag out;
    try {
      out = consistent_extension(s, hints);
    } catch (const InfeasibleOrdering&) {
      out = consistent_extension(s);
    }
    EXPECT_TRUE(in_class(out, truth));
  }
}

TEST(Ordering, McsIsReversedPeoOnChordalGraphs) {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const UndirectedGraph g = random_chordal_graph(2 + static_cast<int>(rng.below(30)), 0.6, rng);
    const std::vector<Vertex> order = mcs_order(g);
    std::vector<int> pos(order.size());
    for (std::size_t x = 0; x < order.size(); ++x) pos[order[x]] = static_cast<int>(x);
    // Earlier neighbours of every vertex form a clique.
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      std::vector<Vertex> earlier;
      for (Vertex w : g.neighbors(v)) {
        if (pos[w] < pos[v]) earlier.push_back(w);
      }
      EXPECT_TRUE(g.is_clique(earlier));
    }
  }
}

}  // namespace
}  // namespace offtarget
