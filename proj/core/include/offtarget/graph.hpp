#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace offtarget {

/// Vertices are dense indices 0..n-1. Names only exist at the I/O boundary.
using Vertex = int;

/// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;

VertexSet make_vertex_set(std::vector<Vertex> vertices);
bool contains(const VertexSet& set, Vertex v);

/// Unordered pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge of(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  bool has(Vertex x) const { return x == u || x == v; }
  Vertex other(Vertex x) const { return x == u ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Ordered pair from -> to.
struct Arc {
  Vertex from = 0;
  Vertex to = 0;

  Edge edge() const { return Edge::of(from, to); }

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// (u, v, w) with u -> v <- w, u and w non-adjacent, u < w.
struct VStructure {
  Vertex u = 0;
  Vertex v = 0;
  Vertex w = 0;

  friend auto operator<=>(const VStructure&, const VStructure&) = default;
};

/// True iff exactly one endpoint of `e` is in `realized`.
bool cuts(const VertexSet& realized, Edge e);

class UndirectedGraph {
 public:
  explicit UndirectedGraph(int n = 0);
  UndirectedGraph(int n, std::span<const Edge> edges);

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  /// Sorted; the position of an edge in this list is its id.
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t id) const { return edges_[id]; }

  /// Sorted neighbor list, with matching edge ids.
  std::span<const Vertex> neighbors(Vertex v) const { return neighbors_[v]; }
  std::span<const std::size_t> incident_edges(Vertex v) const { return incident_[v]; }
  std::size_t degree(Vertex v) const { return neighbors_[v].size(); }

  std::optional<std::size_t> edge_id(Vertex a, Vertex b) const;
  bool adjacent(Vertex a, Vertex b) const { return edge_id(a, b).has_value(); }

  /// Subgraph induced by `vertices`, relabelled 0..k-1 in the given order.
  UndirectedGraph induced(std::span<const Vertex> vertices) const;

  /// Components as sorted vertex sets, ordered by smallest vertex.
  std::vector<VertexSet> connected_components() const;
  bool is_connected() const;
  bool is_clique(std::span<const Vertex> vertices) const;

  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> neighbors_;
  std::vector<std::vector<std::size_t>> incident_;
};

/// A fully directed acyclic graph.
class Dag {
 public:
  Dag() = default;
  /// Repeated arcs are merged. Throws ContractViolation on self-loops,
  /// anti-parallel arcs, out-of-range endpoints, or a directed cycle.
  Dag(int n, std::vector<Arc> arcs);

  int num_vertices() const { return n_; }
  std::size_t num_arcs() const { return arcs_.size(); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::span<const Vertex> parents(Vertex v) const { return parents_[v]; }
  std::span<const Vertex> children(Vertex v) const { return children_[v]; }
  bool has_arc(Vertex from, Vertex to) const;
  bool adjacent(Vertex a, Vertex b) const { return has_arc(a, b) || has_arc(b, a); }

  /// Kahn order, lowest index first among ready vertices.
  const std::vector<Vertex>& topological_order() const { return topo_; }

  friend bool operator==(const Dag& a, const Dag& b) { return a.n_ == b.n_ && a.arcs_ == b.arcs_; }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<Vertex>> parents_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<Vertex> topo_;
};

UndirectedGraph skeleton(const Dag& g);
std::vector<VStructure> v_structures(const Dag& g);
bool is_moral(const Dag& g);

/// Arcs u -> v with Pa(u) = Pa(v) \ {u}.
std::vector<Arc> covered_edges(const Dag& g);

/// Partially directed view of a DAG: the skeleton, which edges have been
/// oriented so far, and which have been cut by some realized intervention.
///
/// The state never holds the ground truth. Orientation information only
/// enters through `orient`, which meek_closure and apply_intervention call.
class OrientationState {
 public:
  OrientationState() = default;
  explicit OrientationState(UndirectedGraph skeleton);

  const UndirectedGraph& skeleton() const { return skeleton_; }
  int num_vertices() const { return skeleton_.num_vertices(); }
  std::size_t num_edges() const { return skeleton_.num_edges(); }

  bool is_oriented(std::size_t edge_id) const { return mark_[edge_id] != 0; }
  bool is_cut(std::size_t edge_id) const { return cut_[edge_id] != 0; }
  std::optional<Arc> arc(std::size_t edge_id) const;

  bool has_arc(Vertex from, Vertex to) const;
  bool is_undirected(Vertex a, Vertex b) const;
  bool adjacent(Vertex a, Vertex b) const { return skeleton_.adjacent(a, b); }

  std::size_t num_unoriented() const { return unoriented_; }
  bool fully_oriented() const { return unoriented_ == 0; }

  std::vector<Arc> oriented_arcs() const;
  std::vector<Edge> unoriented_edges() const;
  std::vector<Vertex> parents(Vertex v) const;
  std::vector<Vertex> children(Vertex v) const;
  std::vector<Vertex> undirected_neighbors(Vertex v) const;

  const std::vector<VertexSet>& interventions() const { return interventions_; }

  /// Orients the skeleton edge {from, to} as from -> to. No-op if it already
  /// is; ContractViolation if it is oriented the other way or not an edge.
  /// Returns true if the edge was previously unoriented.
  bool orient(Vertex from, Vertex to);
  void mark_cut(std::size_t edge_id) { cut_[edge_id] = 1; }
  void record_intervention(VertexSet realized) { interventions_.push_back(std::move(realized)); }

  /// Same skeleton, same orientations, same cut marks.
  friend bool operator==(const OrientationState& a, const OrientationState& b) {
    return a.skeleton_ == b.skeleton_ && a.mark_ == b.mark_ && a.cut_ == b.cut_;
  }

 private:
  UndirectedGraph skeleton_;
  std::vector<std::int8_t> mark_;  // 0 unoriented, +1 u->v, -1 v->u (u < v)
  std::vector<std::uint8_t> cut_;
  std::size_t unoriented_ = 0;
  std::vector<VertexSet> interventions_;
};

/// Essential graph: v-structures of `g` oriented, then Meek closure.
OrientationState essential_graph(const Dag& g);

/// A chain component: its vertices (sorted) and the induced subgraph on them,
/// relabelled 0..|vertices|-1 in that order.
struct ChainComponent {
  VertexSet vertices;
  UndirectedGraph graph;
};

/// Connected components of the unoriented-edge subgraph. Every vertex lands in
/// exactly one component; isolated ones come back as singletons.
std::vector<ChainComponent> chain_components(const OrientationState& s);

/// Component index per vertex, plus component vertex sets. Cheaper than
/// chain_components when the induced graphs are not needed.
struct ChainComponentIndex {
  std::vector<std::size_t> of_vertex;
  std::vector<VertexSet> members;
};
ChainComponentIndex index_chain_components(const OrientationState& s);

/// Throws InvariantViolation if an oriented arc has both endpoints in the
/// same chain component.
void check_separation(const OrientationState& s);

struct InterventionEffect {
  std::vector<std::size_t> cut_edges;  // every skeleton edge cut by the set
  std::vector<std::size_t> newly_cut;  // the subset not cut by any earlier set
  std::size_t newly_oriented = 0;      // including Meek-propagated arcs
};

/// Reveals, for every skeleton edge with exactly one endpoint in `realized`,
/// its orientation in `truth`; marks the edge cut; then closes under Meek.
/// Throws ContractViolation if skeletons differ or `s` disagrees with `truth`.
OrientationState apply_intervention(const OrientationState& s, const Dag& truth,
                                    const VertexSet& realized);

/// In-place version without the skeleton/agreement checks; for the simulator,
/// which validates once up front.
InterventionEffect apply_intervention_unchecked(OrientationState& s, const Dag& truth,
                                                const VertexSet& realized);

/// The DAG given by a fully oriented state.
Dag to_dag(const OrientationState& s);

/// Every oriented arc of `s` is an arc of `truth`, and skeletons match.
bool agrees_with(const OrientationState& s, const Dag& truth);

}  // namespace offtarget
