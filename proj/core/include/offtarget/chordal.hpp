#pragma once

#include <optional>
#include <string>
#include <vector>

#include "offtarget/graph.hpp"

namespace offtarget {

/// Either a perfect elimination ordering or a chordless cycle of length >= 4.
struct ChordalityResult {
  bool chordal = false;
  std::vector<Vertex> elimination_order;
  std::vector<Vertex> cycle;
};

ChordalityResult check_chordal(const UndirectedGraph& g);
inline bool is_chordal(const UndirectedGraph& g) { return check_chordal(g).chordal; }

/// Maximal cliques of a chordal graph (NotChordal otherwise), each sorted,
/// listed in elimination order of their lowest-eliminated vertex.
std::vector<VertexSet> maximal_cliques(const UndirectedGraph& g);
std::size_t max_clique_size(const UndirectedGraph& g);

struct CliqueSeparator {
  VertexSet clique;
  VertexSet side_a;
  VertexSet side_b;
};

/// A clique C with |C| <= p - 1 (p = clique number) such that every connected
/// component of g - C has at most n/2 vertices. The components are packed
/// into the two sides largest first, each onto the currently smaller side.
///
/// Requires g chordal (NotChordal with a witness otherwise), connected and
/// with at least two vertices (ContractViolation).
CliqueSeparator half_clique_separator(const UndirectedGraph& g);

/// Why `sep` is not a valid half clique separator of `g`, or nullopt.
/// Checks: partition of V, C a clique, |C| <= p - 1, no edge between the
/// sides, every component of g - C of size <= n/2.
std::optional<std::string> separator_defect(const UndirectedGraph& g, const CliqueSeparator& sep);

}  // namespace offtarget
