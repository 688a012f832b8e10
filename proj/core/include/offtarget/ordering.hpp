#pragma once

#include <span>
#include <vector>

#include "offtarget/graph.hpp"

namespace offtarget {

/// Require sigma(before) < sigma(after).
struct OrderingConstraint {
  Vertex before = 0;
  Vertex after = 0;
};

/// A permutation of 0..n-1. `order[i]` is the vertex at position i and
/// `position[v]` its inverse.
struct VertexOrdering {
  std::vector<Vertex> order;
  std::vector<int> position;

  bool precedes(Vertex a, Vertex b) const { return position[a] < position[b]; }
};

/// A topological order of some DAG in the equivalence class described by `s`
/// that also satisfies `constraints`.
///
/// Inside each chain component the order is built back to front by repeatedly
/// removing the highest-index simplicial vertex that no remaining constraint
/// needs later; this finds an order whenever one exists. The components are
/// then merged with the oriented arcs by a lowest-index-first Kahn sort.
///
/// Throws InfeasibleOrdering if the constraints are cyclic, contradict an
/// oriented arc, or force a new v-structure inside a component.
VertexOrdering consistent_ordering(const OrientationState& s,
                                   std::span<const OrderingConstraint> constraints = {});

/// Orients every unoriented edge of `s` along consistent_ordering.
Dag consistent_extension(const OrientationState& s,
                         std::span<const OrderingConstraint> constraints = {});

/// Maximum cardinality search visit order of `g`, lowest index on ties.
/// Reversed, it is a perfect elimination ordering when `g` is chordal.
std::vector<Vertex> mcs_order(const UndirectedGraph& g);

}  // namespace offtarget
