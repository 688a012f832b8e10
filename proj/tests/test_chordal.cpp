#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "offtarget/chordal.hpp"
#include "offtarget/errors.hpp"
#include "offtarget/generators.hpp"
#include "oracles.hpp"

namespace offtarget {
namespace {

using namespace offtarget::testing;

UndirectedGraph cycle(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.push_back(Edge::of(v, (v + 1) % n));
  return UndirectedGraph(n, edges);
}

TEST(Chordal, ChordlessCycleIsRejectedWithWitness) {
  for (int n = 4; n <= 9; ++n) {
    const UndirectedGraph g = cycle(n);
    const ChordalityResult r = check_chordal(g);
    EXPECT_FALSE(r.chordal);
    ASSERT_GE(r.cycle.size(), 4u);
    // The witness is a cycle in g.
    for (std::size_t x = 0; x < r.cycle.size(); ++x) {
      EXPECT_TRUE(g.adjacent(r.cycle[x], r.cycle[(x + 1) % r.cycle.size()]));
    }
    EXPECT_THROW(maximal_cliques(g), NotChordal);
  }
}

TEST(Chordal, TreesAreChordal) {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const Dag tree = gen_gnp_tree(2 + static_cast<int>(rng.below(30)), 0.0, rng);
    // p = 0 plus closure may add chords; the skeleton stays chordal either way.
    EXPECT_TRUE(is_chordal(skeleton(tree)));
  }
  const UndirectedGraph path(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  EXPECT_TRUE(is_chordal(path));
}

TEST(Chordal, AgreesWithEliminationOracle) {
  Rng rng(2);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng.below(9));
    std::vector<Edge> edges;
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) {
        if (rng.bernoulli(0.45)) edges.push_back({x, y});
      }
    }
    const UndirectedGraph g(n, edges);
    std::size_t omega = 0;
    const bool expected = oracle::chordal_by_elimination(g, &omega);
    EXPECT_EQ(is_chordal(g), expected);
    if (expected) {
      EXPECT_EQ(max_clique_size(g), omega);
    }
  }
}

TEST(Chordal, ChainComponentsOfEssentialGraphsAreChordal) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const Dag truth = gen_gnp_tree(5 + static_cast<int>(rng.below(30)), 0.15, rng);
    for (const ChainComponent& cc : chain_components(essential_graph(truth))) {
      EXPECT_TRUE(is_chordal(cc.graph));
    }
  }
}

TEST(Separator, PathTakesTheMiddle) {
  const UndirectedGraph path(3, std::vector<Edge>{{0, 1}, {1, 2}});
  const CliqueSeparator sep = half_clique_separator(path);
  EXPECT_EQ(sep.clique, (VertexSet{1}));
  EXPECT_EQ(sep.side_a.size() + sep.side_b.size(), 2u);
}

TEST(Separator, RunningExampleComponent) {
  const UndirectedGraph host = skeleton(running_example());
  const CliqueSeparator sep = half_clique_separator(host);
  std::string why;
  EXPECT_TRUE(oracle::separator_valid(host, sep.clique, sep.side_a, sep.side_b, &why)) << why;
  // {d, g} is also valid for this host; the checker accepts it.
  const VertexSet dg{d, g};
  VertexSet side_a{a, b, c}, side_b{e, f, h, i};
  EXPECT_TRUE(oracle::separator_valid(host, dg, side_a, side_b, &why)) << why;
  EXPECT_FALSE(separator_defect(host, CliqueSeparator{dg, side_a, side_b}).has_value());
}

TEST(Separator, CheckerRejectsBadSeparators) {
  const UndirectedGraph host = skeleton(running_example());
  const CliqueSeparator not_clique{{a, e}, {b, c, d}, {f, g, h, i}};
  EXPECT_TRUE(separator_defect(host, not_clique).has_value());
  const CliqueSeparator unbalanced{{g}, {a, b, c, d, e, f, h, i}, {}};
  EXPECT_TRUE(separator_defect(host, unbalanced).has_value());
}

TEST(Separator, RandomChordalGraphsPassIndependentChecker) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.below(60));
    const UndirectedGraph g = random_chordal_graph(n, rng.uniform(), rng);
    const CliqueSeparator sep = half_clique_separator(g);
    std::string why;
    EXPECT_TRUE(oracle::separator_valid(g, sep.clique, sep.side_a, sep.side_b, &why)) << why << " n=" << n;
  }
}

TEST(Separator, CompleteGraphs) {
  for (int n = 2; n <= 8; ++n) {
    std::vector<Edge> edges;
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) edges.push_back({x, y});
    }
    const UndirectedGraph k(n, edges);
    const CliqueSeparator sep = half_clique_separator(k);
    std::string why;
    EXPECT_TRUE(oracle::separator_valid(k, sep.clique, sep.side_a, sep.side_b, &why)) << why;
  }
}

TEST(Separator, Contract) {
  EXPECT_THROW(half_clique_separator(UndirectedGraph(1)), ContractViolation);
  EXPECT_THROW(half_clique_separator(UndirectedGraph(3, std::vector<Edge>{{0, 1}})), ContractViolation);
}

}  // namespace
}  // namespace offtarget
