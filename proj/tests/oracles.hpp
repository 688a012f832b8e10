#pragma once

// Test-side reference implementations. They deliberately share no code with
// the library beyond the plain Dag/UndirectedGraph containers.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "offtarget/graph.hpp"

namespace offtarget::oracle {

using Matrix = std::vector<std::vector<char>>;

inline Matrix arc_matrix(int n, const std::vector<Arc>& arcs) {
  Matrix m(n, std::vector<char>(n, 0));
  for (const Arc& x : arcs) m[x.from][x.to] = 1;
  return m;
}

inline bool acyclic(int n, const std::vector<Arc>& arcs) {
  const Matrix m = arc_matrix(n, arcs);
  std::vector<int> indeg(n, 0);
  for (const Arc& x : arcs) ++indeg[x.to];
  std::vector<int> ready;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  int seen = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++seen;
    for (int w = 0; w < n; ++w) {
      if (m[v][w] && --indeg[w] == 0) ready.push_back(w);
    }
  }
  return seen == n;
}

/// Every labelled DAG on n vertices, as arc lists (each pair: absent, i->j, j->i).
inline std::vector<std::vector<Arc>> all_dags(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) pairs.emplace_back(x, y);
  }
  std::vector<std::vector<Arc>> out;
  std::vector<int> state(pairs.size(), 0);
  while (true) {
    std::vector<Arc> arcs;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (state[p] == 1) arcs.push_back({pairs[p].first, pairs[p].second});
      if (state[p] == 2) arcs.push_back({pairs[p].second, pairs[p].first});
    }
    if (acyclic(n, arcs)) out.push_back(arcs);
    std::size_t p = 0;
    while (p < state.size() && state[p] == 2) state[p++] = 0;
    if (p == state.size()) break;
    ++state[p];
  }
  return out;
}

/// Unshielded colliders as (min(u,w), v, max(u,w)).
inline std::set<std::tuple<int, int, int>> v_structures(int n, const std::vector<Arc>& arcs) {
  const Matrix m = arc_matrix(n, arcs);
  std::set<std::tuple<int, int, int>> out;
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) {
      for (int w = u + 1; w < n; ++w) {
        if (m[u][v] && m[w][v] && !m[u][w] && !m[w][u]) out.insert({u, v, w});
      }
    }
  }
  return out;
}

inline std::vector<Arc> covered(int n, const std::vector<Arc>& arcs) {
  const Matrix m = arc_matrix(n, arcs);
  std::vector<Arc> out;
  for (const Arc& x : arcs) {
    bool same = true;
    for (int z = 0; z < n && same; ++z) {
      if (z == x.from) continue;
      same = m[z][x.from] == m[z][x.to];
    }
    if (same) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Minimum of w.x over {x >= 0, sum_i a[i*m+j] x_i >= 1 for every j} by
/// enumerating basic solutions. Returns +inf if infeasible. k + m small.
inline double covering_lp_value(std::size_t k, std::size_t m, const std::vector<double>& a,
                                const std::vector<double>& w) {
  if (m == 0) return 0.0;
  // Rows: m covering constraints then k sign constraints, all as g.x >= h.
  const std::size_t rows = m + k;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(k));
  Eigen::VectorXd h = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < k; ++i) g(j, i) = a[i * m + j];
    h(j) = 1.0;
  }
  for (std::size_t i = 0; i < k; ++i) g(m + i, i) = 1.0;

  double best = std::numeric_limits<double>::infinity();
  std::vector<char> pick(rows, 0);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(k), pick.end(), 1);
  do {
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(k));
    Eigen::Index r = 0;
    for (std::size_t row = 0; row < rows; ++row) {
      if (!pick[row]) continue;
      sub.row(r) = g.row(static_cast<Eigen::Index>(row));
      rhs(r++) = h(static_cast<Eigen::Index>(row));
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd x = lu.solve(rhs);
    if (((g * x - h).array() < -1e-9).any()) continue;
    double value = 0.0;
    for (std::size_t i = 0; i < k; ++i) value += w[i] * x(static_cast<Eigen::Index>(i));
    best = std::min(best, value);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

/// Chordality by repeatedly deleting a simplicial vertex. On success fills
/// the largest clique size seen (the clique number for chordal graphs).
inline bool chordal_by_elimination(const UndirectedGraph& g, std::size_t* clique_number = nullptr) {
  const int n = g.num_vertices();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const Edge& x : g.edges()) adj[x.u][x.v] = adj[x.v][x.u] = 1;
  std::vector<char> alive(n, 1);
  std::size_t omega = n > 0 ? 1 : 0;
  for (int round = 0; round < n; ++round) {
    int found = -1;
    for (int v = 0; v < n && found < 0; ++v) {
      if (!alive[v]) continue;
      std::vector<int> nb;
      for (int w = 0; w < n; ++w) {
        if (alive[w] && adj[v][w]) nb.push_back(w);
      }
      bool simplicial = true;
      for (std::size_t x = 0; x < nb.size() && simplicial; ++x) {
        for (std::size_t y = x + 1; y < nb.size() && simplicial; ++y) simplicial = adj[nb[x]][nb[y]];
      }
      if (simplicial) {
        found = v;
        omega = std::max(omega, nb.size() + 1);
      }
    }
    if (found < 0) return false;
    alive[found] = 0;
  }
  if (clique_number) *clique_number = omega;
  return true;
}

/// Chordality via lexicographic BFS: the reverse visit order must be a
/// perfect elimination ordering. O(n^2) labels, fine for a few hundred
/// vertices. On success fills the clique number.
inline bool chordal_by_lex_bfs(const UndirectedGraph& g, std::size_t* clique_number = nullptr) {
  const int n = g.num_vertices();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const Edge& x : g.edges()) adj[x.u][x.v] = adj[x.v][x.u] = 1;
  std::vector<std::vector<int>> label(n);
  std::vector<char> visited(n, 0);
  std::vector<int> visit_pos(n, -1);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (!visited[v] && (pick < 0 || label[v] > label[pick])) pick = v;
    }
    visited[pick] = 1;
    visit_pos[pick] = step;
    order.push_back(pick);
    for (int w = 0; w < n; ++w) {
      if (adj[pick][w] && !visited[w]) label[w].push_back(n - step);
    }
  }
  std::size_t omega = n > 0 ? 1 : 0;
  for (int v : order) {
    std::vector<int> earlier;
    for (int w = 0; w < n; ++w) {
      if (adj[v][w] && visit_pos[w] < visit_pos[v]) earlier.push_back(w);
    }
    for (std::size_t x = 0; x < earlier.size(); ++x) {
      for (std::size_t y = x + 1; y < earlier.size(); ++y) {
        if (!adj[earlier[x]][earlier[y]]) return false;
      }
    }
    omega = std::max(omega, earlier.size() + 1);
  }
  if (clique_number) *clique_number = omega;
  return true;
}

/// Sizes of the connected components of g minus `removed`.
inline std::vector<int> component_sizes_without(const UndirectedGraph& g, const std::vector<Vertex>& removed) {
  const int n = g.num_vertices();
  std::vector<char> gone(n, 0);
  for (Vertex v : removed) gone[v] = 1;
  std::vector<char> seen(n, 0);
  std::vector<int> sizes;
  for (int s = 0; s < n; ++s) {
    if (gone[s] || seen[s]) continue;
    int size = 0;
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      ++size;
      for (Vertex w : g.neighbors(v)) {
        if (!gone[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    sizes.push_back(size);
  }
  return sizes;
}

/// Clique, balance (every remaining component has at most n/2 vertices),
/// size bound (|C| <= omega - 1, or |C| <= 1 when omega is 1), and a proper
/// partition into clique/side_a/side_b with no edge across the sides.
inline bool separator_valid(const UndirectedGraph& g, const VertexSet& clique, const VertexSet& side_a,
                            const VertexSet& side_b, std::string* why = nullptr) {
  auto fail = [&](const char* reason) {
    if (why) *why = reason;
    return false;
  };
  const int n = g.num_vertices();
  for (std::size_t x = 0; x < clique.size(); ++x) {
    for (std::size_t y = x + 1; y < clique.size(); ++y) {
      if (!g.adjacent(clique[x], clique[y])) return fail("not a clique");
    }
  }
  for (int s : component_sizes_without(g, clique)) {
    if (2 * s > n) return fail("component larger than n/2");
  }
  std::size_t omega = 0;
  if (!chordal_by_lex_bfs(g, &omega)) return fail("host not chordal");
  if (clique.size() > std::max<std::size_t>(omega - 1, 1)) return fail("separator too large");
  std::vector<int> owner(n, -1);
  auto claim = [&](const VertexSet& part, int tag) {
    for (Vertex v : part) {
      if (v < 0 || v >= n || owner[v] != -1) return false;
      owner[v] = tag;
    }
    return true;
  };
  if (!claim(clique, 0) || !claim(side_a, 1) || !claim(side_b, 2)) return fail("parts overlap");
  if (std::count(owner.begin(), owner.end(), -1) != 0) return fail("parts do not cover V");
  for (const Edge& x : g.edges()) {
    if (owner[x.u] + owner[x.v] == 3 && owner[x.u] != 0 && owner[x.v] != 0) return fail("edge across sides");
  }
  return true;
}

}  // namespace offtarget::oracle
