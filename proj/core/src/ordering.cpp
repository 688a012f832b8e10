#include "offtarget/ordering.hpp"

#include <queue>
#include <string>

#include "offtarget/errors.hpp"

namespace offtarget {
namespace {

// Maximum cardinality search, lowest index on ties.
std::vector<Vertex> plain_mcs(const UndirectedGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> weight(n, 0);
  std::vector<char> visited(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (!visited[v] && (best < 0 || weight[v] > weight[best])) best = v;
    }
    visited[best] = 1;
    order.push_back(best);
    for (Vertex w : g.neighbors(best)) {
      if (!visited[w]) ++weight[w];
    }
  }
  return order;
}

// Orders a chordal `g` so that earlier neighbours are always pairwise
// adjacent and every vertex follows its `preds`. Built back to front: the last
// vertex of any valid order is simplicial with no pending successor, and
// dropping it leaves a valid instance, so the greedy choice never dead-ends.
// Empty result if no valid order exists.
std::vector<Vertex> constrained_elimination(const UndirectedGraph& g,
                                            const std::vector<std::vector<Vertex>>& preds) {
  const int n = g.num_vertices();
  std::vector<int> pending_succ(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex p : preds[v]) ++pending_succ[p];
  }
  std::vector<char> removed(n, 0);
  std::vector<Vertex> reversed;
  reversed.reserve(n);
  std::vector<Vertex> live;
  for (int step = 0; step < n; ++step) {
    Vertex pick = -1;
    for (Vertex v = n - 1; v >= 0 && pick < 0; --v) {
      if (removed[v] || pending_succ[v] > 0) continue;
      live.clear();
      for (Vertex w : g.neighbors(v)) {
        if (!removed[w]) live.push_back(w);
      }
      if (g.is_clique(live)) pick = v;
    }
    if (pick < 0) return {};
    removed[pick] = 1;
    reversed.push_back(pick);
    for (Vertex p : preds[pick]) --pending_succ[p];
  }
  return {reversed.rbegin(), reversed.rend()};
}

}  // namespace

std::vector<Vertex> mcs_order(const UndirectedGraph& g) {
  return plain_mcs(g);
}

VertexOrdering consistent_ordering(const OrientationState& s,
                                   std::span<const OrderingConstraint> constraints) {
  const int n = s.num_vertices();
  for (const OrderingConstraint& c : constraints) {
    if (c.before < 0 || c.after < 0 || c.before >= n || c.after >= n) {
      throw ContractViolation("ordering constraint names an unknown vertex");
    }
    if (c.before == c.after) {
      throw InfeasibleOrdering("vertex " + std::to_string(c.before) + " constrained before itself");
    }
  }

  std::vector<ChainComponent> comps = chain_components(s);
  std::vector<int> comp_of(n, -1);
  std::vector<int> local(n, -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t i = 0; i < comps[c].vertices.size(); ++i) {
      comp_of[comps[c].vertices[i]] = static_cast<int>(c);
      local[comps[c].vertices[i]] = static_cast<int>(i);
    }
  }

  // Global precedence graph: oriented arcs, chain orders, cross constraints.
  std::vector<std::vector<Vertex>> after(n);
  for (const Arc& a : s.oriented_arcs()) after[a.from].push_back(a.to);

  std::vector<std::vector<std::vector<Vertex>>> local_preds(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    local_preds[c].resize(comps[c].vertices.size());
  }
  for (const OrderingConstraint& c : constraints) {
    if (comp_of[c.before] == comp_of[c.after]) {
      local_preds[comp_of[c.before]][local[c.after]].push_back(local[c.before]);
    } else {
      after[c.before].push_back(c.after);
    }
  }

  for (std::size_t c = 0; c < comps.size(); ++c) {
    const ChainComponent& cc = comps[c];
    if (cc.vertices.size() < 2) continue;
    std::vector<Vertex> order = constrained_elimination(cc.graph, local_preds[c]);
    if (order.empty()) {
      throw InfeasibleOrdering(
          "constraints inside a chain component are cyclic or force a new v-structure");
    }
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      after[cc.vertices[order[i]]].push_back(cc.vertices[order[i + 1]]);
    }
  }

  std::vector<int> indeg(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : after[v]) ++indeg[w];
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push(v);
  }
  VertexOrdering out;
  out.order.reserve(n);
  out.position.assign(n, -1);
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    out.position[v] = static_cast<int>(out.order.size());
    out.order.push_back(v);
    for (Vertex w : after[v]) {
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  if (static_cast<int>(out.order.size()) != n) {
    throw InfeasibleOrdering("ordering constraints contradict the oriented arcs");
  }
  return out;
}

Dag consistent_extension(const OrientationState& s,
                         std::span<const OrderingConstraint> constraints) {
  VertexOrdering sigma = consistent_ordering(s, constraints);
  std::vector<Arc> arcs;
  arcs.reserve(s.num_edges());
  for (const Edge& e : s.skeleton().edges()) {
    arcs.push_back(sigma.precedes(e.u, e.v) ? Arc{e.u, e.v} : Arc{e.v, e.u});
  }
  return Dag(s.num_vertices(), std::move(arcs));
}

}  // namespace offtarget
