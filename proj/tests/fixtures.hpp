#pragma once

#include <vector>

#include "offtarget/graph.hpp"

namespace offtarget::testing {

// Letters of the nine-vertex running example, as indices.
enum Letter : Vertex { a = 0, b, c, d, e, f, g, h, i };

// The moral nine-vertex DAG used throughout the examples.
inline Dag running_example() {
  return Dag(9, {{a, b}, {a, c}, {a, d}, {b, d}, {c, b}, {c, d}, {d, e},
                 {d, g}, {d, h}, {d, i}, {e, f}, {e, h}, {h, i}});
}

// u -> v <- w with u -> w (u=0, v=1, w=2).
inline Dag triangle_into_v() { return Dag(3, {{0, 1}, {2, 1}, {0, 2}}); }

// v -> u, v -> w, u -> w (u=0, v=1, w=2).
inline Dag triangle_from_v() { return Dag(3, {{1, 0}, {1, 2}, {0, 2}}); }

// Totally ordered clique 0 -> 1 -> ... -> n-1.
inline Dag ordered_clique(int n) {
  std::vector<Arc> arcs;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) arcs.push_back({x, y});
  }
  return Dag(n, std::move(arcs));
}

inline Dag path3() { return Dag(3, {{0, 1}, {1, 2}}); }

}  // namespace offtarget::testing
