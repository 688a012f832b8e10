#include "offtarget/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "offtarget/errors.hpp"
#include "offtarget/meek.hpp"

namespace offtarget {

VertexSet make_vertex_set(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

bool contains(const VertexSet& set, Vertex v) { return std::binary_search(set.begin(), set.end(), v); }

bool cuts(const VertexSet& realized, Edge e) { return contains(realized, e.u) != contains(realized, e.v); }

// ---------------------------------------------------------------------------
// UndirectedGraph

UndirectedGraph::UndirectedGraph(int n) : n_(n), neighbors_(n), incident_(n) {
  if (n < 0) throw ContractViolation("negative vertex count");
}

UndirectedGraph::UndirectedGraph(int n, std::span<const Edge> edges) : UndirectedGraph(n) {
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    e = Edge::of(e.u, e.v);
    if (e.u < 0 || e.v >= n) throw ContractViolation("edge endpoint out of range");
    if (e.u == e.v) throw ContractViolation("self-loop on vertex " + std::to_string(e.u));
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(n);
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    adj[edges_[id].u].emplace_back(edges_[id].v, id);
    adj[edges_[id].v].emplace_back(edges_[id].u, id);
  }
  for (int v = 0; v < n; ++v) {
    std::sort(adj[v].begin(), adj[v].end());
    neighbors_[v].reserve(adj[v].size());
    incident_[v].reserve(adj[v].size());
    for (auto [w, id] : adj[v]) {
      neighbors_[v].push_back(w);
      incident_[v].push_back(id);
    }
  }
}

std::optional<std::size_t> UndirectedGraph::edge_id(Vertex a, Vertex b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) return std::nullopt;
  const auto& nb = neighbors_[a];
  auto it = std::lower_bound(nb.begin(), nb.end(), b);
  if (it == nb.end() || *it != b) return std::nullopt;
  return incident_[a][static_cast<std::size_t>(it - nb.begin())];
}

UndirectedGraph UndirectedGraph::induced(std::span<const Vertex> vertices) const {
  std::vector<int> local(n_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
  std::vector<Edge> sub;
  for (Vertex v : vertices) {
    for (Vertex w : neighbors_[v]) {
      if (v < w && local[w] >= 0) sub.push_back(Edge::of(local[v], local[w]));
    }
  }
  return UndirectedGraph(static_cast<int>(vertices.size()), sub);
}

std::vector<VertexSet> UndirectedGraph::connected_components() const {
  std::vector<VertexSet> out;
  std::vector<char> seen(n_, 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n_; ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : neighbors_[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool UndirectedGraph::is_connected() const { return n_ <= 1 || connected_components().size() == 1; }

bool UndirectedGraph::is_clique(std::span<const Vertex> vertices) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Dag

Dag::Dag(int n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)), parents_(n), children_(n) {
  if (n < 0) throw ContractViolation("negative vertex count");
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  std::vector<Edge> pairs;
  pairs.reserve(arcs_.size());
  for (const Arc& a : arcs_) {
    if (a.from < 0 || a.to < 0 || a.from >= n || a.to >= n) {
      throw ContractViolation("arc endpoint out of range");
    }
    if (a.from == a.to) throw ContractViolation("self-loop on vertex " + std::to_string(a.from));
    pairs.push_back(a.edge());
    parents_[a.to].push_back(a.from);
    children_[a.from].push_back(a.to);
  }
  std::sort(pairs.begin(), pairs.end());
  if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) {
    throw ContractViolation("anti-parallel arc pair");
  }
  for (int v = 0; v < n; ++v) {
    std::sort(parents_[v].begin(), parents_[v].end());
    std::sort(children_[v].begin(), children_[v].end());
  }

  std::vector<std::size_t> indeg(n);
  for (int v = 0; v < n; ++v) indeg[v] = parents_[v].size();
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push(v);
  }
  topo_.reserve(n);
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    topo_.push_back(v);
    for (Vertex c : children_[v]) {
      if (--indeg[c] == 0) ready.push(c);
    }
  }
  if (static_cast<int>(topo_.size()) != n) throw ContractViolation("arcs contain a directed cycle");
}

bool Dag::has_arc(Vertex from, Vertex to) const {
  if (from < 0 || from >= n_) return false;
  const auto& ch = children_[from];
  return std::binary_search(ch.begin(), ch.end(), to);
}

UndirectedGraph skeleton(const Dag& g) {
  std::vector<Edge> edges;
  edges.reserve(g.num_arcs());
  for (const Arc& a : g.arcs()) edges.push_back(a.edge());
  return UndirectedGraph(g.num_vertices(), edges);
}

std::vector<VStructure> v_structures(const Dag& g) {
  std::vector<VStructure> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto pa = g.parents(v);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = i + 1; j < pa.size(); ++j) {
        if (!g.adjacent(pa[i], pa[j])) out.push_back({pa[i], v, pa[j]});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_moral(const Dag& g) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto pa = g.parents(v);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = i + 1; j < pa.size(); ++j) {
        if (!g.adjacent(pa[i], pa[j])) return false;
      }
    }
  }
  return true;
}

std::vector<Arc> covered_edges(const Dag& g) {
  std::vector<Arc> out;
  for (const Arc& a : g.arcs()) {
    auto pu = g.parents(a.from);
    auto pv = g.parents(a.to);
    if (pv.size() != pu.size() + 1) continue;
    std::vector<Vertex> rest;
    rest.reserve(pu.size());
    for (Vertex p : pv) {
      if (p != a.from) rest.push_back(p);
    }
    if (std::equal(rest.begin(), rest.end(), pu.begin(), pu.end())) out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// OrientationState

OrientationState::OrientationState(UndirectedGraph skeleton)
    : skeleton_(std::move(skeleton)),
      mark_(skeleton_.num_edges(), 0),
      cut_(skeleton_.num_edges(), 0),
      unoriented_(skeleton_.num_edges()) {}

std::optional<Arc> OrientationState::arc(std::size_t edge_id) const {
  const Edge& e = skeleton_.edge(edge_id);
  if (mark_[edge_id] > 0) return Arc{e.u, e.v};
  if (mark_[edge_id] < 0) return Arc{e.v, e.u};
  return std::nullopt;
}

bool OrientationState::has_arc(Vertex from, Vertex to) const {
  auto id = skeleton_.edge_id(from, to);
  if (!id) return false;
  return from < to ? mark_[*id] > 0 : mark_[*id] < 0;
}

bool OrientationState::is_undirected(Vertex a, Vertex b) const {
  auto id = skeleton_.edge_id(a, b);
  return id && mark_[*id] == 0;
}

std::vector<Arc> OrientationState::oriented_arcs() const {
  std::vector<Arc> out;
  for (std::size_t id = 0; id < mark_.size(); ++id) {
    if (auto a = arc(id)) out.push_back(*a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> OrientationState::unoriented_edges() const {
  std::vector<Edge> out;
  for (std::size_t id = 0; id < mark_.size(); ++id) {
    if (mark_[id] == 0) out.push_back(skeleton_.edge(id));
  }
  return out;
}

std::vector<Vertex> OrientationState::parents(Vertex v) const {
  std::vector<Vertex> out;
  auto nb = skeleton_.neighbors(v);
  auto ids = skeleton_.incident_edges(v);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    const std::int8_t m = mark_[ids[i]];
    if (m != 0 && (nb[i] < v) == (m > 0)) out.push_back(nb[i]);
  }
  return out;
}

std::vector<Vertex> OrientationState::children(Vertex v) const {
  std::vector<Vertex> out;
  auto nb = skeleton_.neighbors(v);
  auto ids = skeleton_.incident_edges(v);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    const std::int8_t m = mark_[ids[i]];
    if (m != 0 && (v < nb[i]) == (m > 0)) out.push_back(nb[i]);
  }
  return out;
}

std::vector<Vertex> OrientationState::undirected_neighbors(Vertex v) const {
  std::vector<Vertex> out;
  auto nb = skeleton_.neighbors(v);
  auto ids = skeleton_.incident_edges(v);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    if (mark_[ids[i]] == 0) out.push_back(nb[i]);
  }
  return out;
}

bool OrientationState::orient(Vertex from, Vertex to) {
  auto id = skeleton_.edge_id(from, to);
  if (!id) {
    throw ContractViolation("cannot orient non-edge " + std::to_string(from) + "->" +
                            std::to_string(to));
  }
  const std::int8_t want = from < to ? 1 : -1;
  std::int8_t& m = mark_[*id];
  if (m == want) return false;
  if (m != 0) {
    throw ContractViolation("edge " + std::to_string(from) + "-" + std::to_string(to) +
                            " is already oriented the other way");
  }
  m = want;
  --unoriented_;
  return true;
}

OrientationState essential_graph(const Dag& g) {
  OrientationState s(skeleton(g));
  // Orient each parent arc that takes part in some v-structure, without
  // listing the (possibly quadratically many) triples.
  std::vector<char> in_collider;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto pa = g.parents(v);
    in_collider.assign(pa.size(), 0);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = i + 1; j < pa.size(); ++j) {
        if ((!in_collider[i] || !in_collider[j]) && !g.adjacent(pa[i], pa[j])) {
          in_collider[i] = in_collider[j] = 1;
        }
      }
    }
    for (std::size_t i = 0; i < pa.size(); ++i) {
      if (in_collider[i]) s.orient(pa[i], v);
    }
  }
  meek_close_in_place(s);
  return s;
}

ChainComponentIndex index_chain_components(const OrientationState& s) {
  const int n = s.num_vertices();
  ChainComponentIndex idx;
  idx.of_vertex.assign(n, static_cast<std::size_t>(-1));
  std::vector<Vertex> stack;
  const auto& sk = s.skeleton();
  for (Vertex start = 0; start < n; ++start) {
    if (idx.of_vertex[start] != static_cast<std::size_t>(-1)) continue;
    const std::size_t c = idx.members.size();
    VertexSet comp;
    idx.of_vertex[start] = c;
    stack.push_back(start);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      auto nb = sk.neighbors(v);
      auto ids = sk.incident_edges(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (!s.is_oriented(ids[i]) && idx.of_vertex[nb[i]] == static_cast<std::size_t>(-1)) {
          idx.of_vertex[nb[i]] = c;
          stack.push_back(nb[i]);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    idx.members.push_back(std::move(comp));
  }
  return idx;
}

std::vector<ChainComponent> chain_components(const OrientationState& s) {
  ChainComponentIndex idx = index_chain_components(s);
  std::vector<ChainComponent> out;
  out.reserve(idx.members.size());
  for (VertexSet& members : idx.members) {
    std::vector<int> local(s.num_vertices(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (Vertex v : members) {
      for (Vertex w : s.undirected_neighbors(v)) {
        if (v < w) edges.push_back(Edge::of(local[v], local[w]));
      }
    }
    const int k = static_cast<int>(members.size());
    out.push_back({std::move(members), UndirectedGraph(k, edges)});
  }
  return out;
}

void check_separation(const OrientationState& s) {
  ChainComponentIndex idx = index_chain_components(s);
  for (std::size_t id = 0; id < s.num_edges(); ++id) {
    if (!s.is_oriented(id)) continue;
    const Edge& e = s.skeleton().edge(id);
    if (idx.of_vertex[e.u] == idx.of_vertex[e.v]) {
      throw InvariantViolation("oriented arc between " + std::to_string(e.u) + " and " +
                               std::to_string(e.v) + " lies inside one chain component");
    }
  }
}

bool agrees_with(const OrientationState& s, const Dag& truth) {
  if (s.num_vertices() != truth.num_vertices()) return false;
  if (!(s.skeleton() == skeleton(truth))) return false;
  for (std::size_t id = 0; id < s.num_edges(); ++id) {
    if (auto a = s.arc(id); a && !truth.has_arc(a->from, a->to)) return false;
  }
  return true;
}

InterventionEffect apply_intervention_unchecked(OrientationState& s, const Dag& truth,
                                                const VertexSet& realized) {
  InterventionEffect effect;
  if (realized.empty()) return effect;
  const int n = s.num_vertices();
  std::vector<char> in(n, 0);
  for (Vertex v : realized) {
    if (v >= 0 && v < n) in[v] = 1;
  }
  std::vector<Arc> revealed;
  const auto& sk = s.skeleton();
  for (Vertex v : realized) {
    if (v < 0 || v >= n) continue;
    auto nb = sk.neighbors(v);
    auto ids = sk.incident_edges(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (in[nb[i]]) continue;
      effect.cut_edges.push_back(ids[i]);
      if (!s.is_cut(ids[i])) effect.newly_cut.push_back(ids[i]);
      s.mark_cut(ids[i]);
      const Arc a = truth.has_arc(v, nb[i]) ? Arc{v, nb[i]} : Arc{nb[i], v};
      if (s.orient(a.from, a.to)) revealed.push_back(a);
    }
  }
  std::sort(effect.cut_edges.begin(), effect.cut_edges.end());
  std::sort(effect.newly_cut.begin(), effect.newly_cut.end());
  effect.newly_oriented = revealed.size();
  effect.newly_oriented += meek_propagate(s, revealed);
  s.record_intervention(realized);
  return effect;
}

OrientationState apply_intervention(const OrientationState& s, const Dag& truth,
                                    const VertexSet& realized) {
  if (!agrees_with(s, truth)) {
    throw ContractViolation("state does not match the ground truth skeleton or orientation");
  }
  OrientationState out = s;
  apply_intervention_unchecked(out, truth, make_vertex_set(realized));
  return out;
}

Dag to_dag(const OrientationState& s) {
  if (!s.fully_oriented()) throw ContractViolation("state still has unoriented edges");
  return Dag(s.num_vertices(), s.oriented_arcs());
}

}  // namespace offtarget
