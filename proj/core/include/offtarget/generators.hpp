#pragma once

#include "offtarget/graph.hpp"
#include "offtarget/intervention.hpp"
#include "offtarget/rng.hpp"

namespace offtarget {

/// Adds u -> w for every v-structure u -> v <- w (u before w in topological
/// order) until none remain. The result is moral and keeps the old order.
Dag close_v_structures(const Dag& g);

/// Erdos-Renyi G(n, p) united with a uniform random spanning tree (Pruefer
/// code), every edge oriented from the lower to the higher index, then
/// v-structures closed. Connected and moral. Requires n >= 2, p in [0, 1].
Dag gen_gnp_tree(int n, double p, Rng& rng);

/// The star of the hardness construction: leaves 0..n-2, centre n-1.
/// `root` is any vertex; the DAG points away from it. Action i < n-1
/// intervenes on leaf i; action n-1 on a uniformly random leaf. Unit weights.
struct HardnessStar {
  Dag truth;
  ActionSet actions;
  Vertex centre = 0;
};
HardnessStar gen_hardness_star(int n, Vertex root);

/// Connected chordal graph grown by adding simplicial vertices: vertex v
/// attaches to a random clique around a random earlier vertex, keeping each
/// eligible neighbour with probability `density`.
UndirectedGraph random_chordal_graph(int n, double density, Rng& rng);

/// Random DAG: each pair i < j becomes the arc perm[i] -> perm[j] with
/// probability p, for a random permutation perm.
Dag random_dag(int n, double p, Rng& rng);

}  // namespace offtarget
