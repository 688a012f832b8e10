#include "offtarget/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "offtarget/errors.hpp"

namespace offtarget {

Dag close_v_structures(const Dag& g) {
  const int n = g.num_vertices();
  std::vector<int> pos(n);
  const auto& topo = g.topological_order();
  for (int i = 0; i < n; ++i) pos[topo[i]] = i;
  std::set<Arc> arcs(g.arcs().begin(), g.arcs().end());
  while (true) {
    Dag current(n, std::vector<Arc>(arcs.begin(), arcs.end()));
    const std::vector<VStructure> vs = v_structures(current);
    if (vs.empty()) return current;
    for (const VStructure& s : vs) {
      arcs.insert(pos[s.u] < pos[s.w] ? Arc{s.u, s.w} : Arc{s.w, s.u});
    }
  }
}

Dag gen_gnp_tree(int n, double p, Rng& rng) {
  if (n < 2) throw ContractViolation("gnp_tree needs n >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("gnp_tree needs p in [0,1]");
  std::set<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) edges.insert({i, j});
    }
  }
  // Pruefer decoding of a uniform random labelled tree.
  std::vector<int> code(std::max(n - 2, 0));
  for (int& c : code) c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  std::vector<int> degree(n, 1);
  for (int c : code) ++degree[c];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.insert(v);
  }
  for (int c : code) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.insert(Edge::of(leaf, c));
    if (--degree[c] == 1) leaves.insert(c);
  }
  const int a = *leaves.begin();
  const int b = *std::next(leaves.begin());
  edges.insert(Edge::of(a, b));

  std::vector<Arc> arcs;
  for (const Edge& e : edges) arcs.push_back({e.u, e.v});
  return close_v_structures(Dag(n, std::move(arcs)));
}

HardnessStar gen_hardness_star(int n, Vertex root) {
  if (n < 3) throw ContractViolation("hardness star needs n >= 3");
  if (root < 0 || root >= n) throw ContractViolation("star root out of range");
  const Vertex centre = n - 1;
  std::vector<Arc> arcs;
  for (Vertex leaf = 0; leaf < centre; ++leaf) {
    arcs.push_back(leaf == root ? Arc{leaf, centre} : Arc{centre, leaf});
  }
  HardnessStar out;
  out.truth = Dag(n, std::move(arcs));
  out.centre = centre;
  out.actions.host = skeleton(out.truth);
  AtomicWeighted uniform;
  for (Vertex leaf = 0; leaf < centre; ++leaf) {
    out.actions.dists.emplace_back(Deterministic{{leaf}});
    uniform.mass.emplace_back(leaf, 1.0 / static_cast<double>(n - 1));
  }
  out.actions.dists.emplace_back(std::move(uniform));
  out.actions.weights.assign(n, 1.0);
  return out;
}

UndirectedGraph random_chordal_graph(int n, double density, Rng& rng) {
  if (n < 1) throw ContractViolation("random chordal graph needs n >= 1");
  std::vector<std::set<Vertex>> adj(n);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    const Vertex anchor = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(v)));
    std::vector<Vertex> clique{anchor};
    std::vector<Vertex> candidates(adj[anchor].begin(), adj[anchor].end());
    for (std::size_t i = candidates.size(); i > 1; --i) {
      std::swap(candidates[i - 1], candidates[rng.below(i)]);
    }
    for (Vertex c : candidates) {
      const bool fits = std::all_of(clique.begin(), clique.end(),
                                    [&](Vertex q) { return adj[q].count(c) > 0; });
      if (fits && rng.bernoulli(density)) clique.push_back(c);
    }
    for (Vertex q : clique) {
      adj[q].insert(v);
      adj[v].insert(q);
      edges.push_back(Edge::of(q, v));
    }
  }
  return UndirectedGraph(n, edges);
}

Dag random_dag(int n, double p, Rng& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) arcs.push_back({perm[i], perm[j]});
    }
  }
  return Dag(n, std::move(arcs));
}

}  // namespace offtarget
