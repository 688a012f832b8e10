#include "offtarget/chordal.hpp"

#include <algorithm>
#include <queue>

#include "offtarget/errors.hpp"
#include "offtarget/ordering.hpp"

namespace offtarget {
namespace {

// Chordless cycle through v, a, b if one exists: a shortest a-b path that
// avoids every other neighbour of v.
std::vector<Vertex> cycle_through(const UndirectedGraph& g, Vertex v, Vertex a, Vertex b) {
  const int n = g.num_vertices();
  std::vector<char> blocked(n, 0);
  blocked[v] = 1;
  for (Vertex w : g.neighbors(v)) {
    if (w != a && w != b) blocked[w] = 1;
  }
  std::vector<Vertex> prev(n, -1);
  std::queue<Vertex> q;
  q.push(a);
  prev[a] = a;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    if (x == b) break;
    for (Vertex y : g.neighbors(x)) {
      if (blocked[y] || prev[y] >= 0) continue;
      if (x == a && y == b) continue;  // a and b are non-adjacent anyway
      prev[y] = x;
      q.push(y);
    }
  }
  if (prev[b] < 0) return {};
  std::vector<Vertex> path;
  for (Vertex x = b; x != a; x = prev[x]) path.push_back(x);
  path.push_back(a);
  std::reverse(path.begin(), path.end());
  std::vector<Vertex> cycle{v};
  cycle.insert(cycle.end(), path.begin(), path.end());
  return cycle;
}

std::vector<Vertex> find_chordless_cycle(const UndirectedGraph& g, Vertex hint_v, Vertex hint_a,
                                         Vertex hint_b) {
  if (auto c = cycle_through(g, hint_v, hint_a, hint_b); !c.empty()) return c;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (g.adjacent(nb[i], nb[j])) continue;
        if (auto c = cycle_through(g, v, nb[i], nb[j]); !c.empty()) return c;
      }
    }
  }
  throw InvariantViolation("no chordless cycle found in a graph that failed the chordality test");
}

// Size of the largest component of g - removed.
std::size_t largest_remaining_component(const UndirectedGraph& g, const VertexSet& removed,
                                        std::vector<VertexSet>* components = nullptr) {
  const int n = g.num_vertices();
  std::vector<char> seen(n, 0);
  for (Vertex v : removed) seen[v] = 1;
  std::size_t largest = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    largest = std::max(largest, comp.size());
    if (components) {
      std::sort(comp.begin(), comp.end());
      components->push_back(std::move(comp));
    }
  }
  return largest;
}

bool balanced(const UndirectedGraph& g, const VertexSet& c) {
  return 2 * largest_remaining_component(g, c) <= static_cast<std::size_t>(g.num_vertices());
}

// Drops vertices (lowest index first) while the rest still balances.
VertexSet shrink(const UndirectedGraph& g, VertexSet c) {
  for (std::size_t i = 0; i < c.size();) {
    VertexSet smaller = c;
    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
    if (!smaller.empty() && balanced(g, smaller)) {
      c = std::move(smaller);
    } else {
      ++i;
    }
  }
  return c;
}

std::size_t intersection_size(const VertexSet& a, const VertexSet& b) {
  std::size_t k = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++k;
      ++i;
      ++j;
    }
  }
  return k;
}

// Maximum-weight spanning tree of the clique intersection graph (Prim).
std::vector<std::vector<std::size_t>> clique_tree(const std::vector<VertexSet>& cliques) {
  const std::size_t c = cliques.size();
  std::vector<std::vector<std::size_t>> adj(c);
  if (c == 0) return adj;
  std::vector<char> in_tree(c, 0);
  std::vector<long> best(c, -1);
  std::vector<std::size_t> link(c, 0);
  best[0] = 0;
  for (std::size_t step = 0; step < c; ++step) {
    std::size_t pick = c;
    for (std::size_t i = 0; i < c; ++i) {
      if (!in_tree[i] && (pick == c || best[i] > best[pick])) pick = i;
    }
    in_tree[pick] = 1;
    if (step > 0) {
      adj[pick].push_back(link[pick]);
      adj[link[pick]].push_back(pick);
    }
    for (std::size_t i = 0; i < c; ++i) {
      if (in_tree[i]) continue;
      const long w = static_cast<long>(intersection_size(cliques[pick], cliques[i]));
      if (w > best[i]) {
        best[i] = w;
        link[i] = pick;
      }
    }
  }
  return adj;
}

// Walks the clique tree towards the oversized component until the current
// clique balances. Returns nullopt if the walk revisits a node.
std::optional<std::size_t> centroid_clique(const UndirectedGraph& g,
                                           const std::vector<VertexSet>& cliques,
                                           const std::vector<std::vector<std::size_t>>& tree) {
  const std::size_t c = cliques.size();
  std::vector<char> visited(c, 0);
  std::size_t cur = 0;
  while (true) {
    if (visited[cur]) return std::nullopt;
    visited[cur] = 1;
    std::vector<VertexSet> comps;
    largest_remaining_component(g, cliques[cur], &comps);
    const VertexSet* big = nullptr;
    for (const VertexSet& comp : comps) {
      if (2 * comp.size() > static_cast<std::size_t>(g.num_vertices())) big = &comp;
    }
    if (!big) return cur;
    const Vertex x = big->front();
    // BFS in the tree from cur to any clique containing x; step once.
    std::vector<std::size_t> prev(c, c);
    std::queue<std::size_t> q;
    q.push(cur);
    prev[cur] = cur;
    std::size_t goal = c;
    while (!q.empty() && goal == c) {
      std::size_t t = q.front();
      q.pop();
      if (contains(cliques[t], x)) {
        goal = t;
        break;
      }
      for (std::size_t u : tree[t]) {
        if (prev[u] == c) {
          prev[u] = t;
          q.push(u);
        }
      }
    }
    if (goal == c || goal == cur) return std::nullopt;
    while (prev[goal] != cur) goal = prev[goal];
    cur = goal;
  }
}

}  // namespace

ChordalityResult check_chordal(const UndirectedGraph& g) {
  ChordalityResult out;
  std::vector<Vertex> visit = mcs_order(g);
  std::vector<int> pos(g.num_vertices());
  for (std::size_t i = 0; i < visit.size(); ++i) pos[visit[i]] = static_cast<int>(i);
  std::vector<Vertex> earlier;
  for (Vertex v : visit) {
    earlier.clear();
    for (Vertex w : g.neighbors(v)) {
      if (pos[w] < pos[v]) earlier.push_back(w);
    }
    for (std::size_t i = 0; i < earlier.size(); ++i) {
      for (std::size_t j = i + 1; j < earlier.size(); ++j) {
        if (!g.adjacent(earlier[i], earlier[j])) {
          out.cycle = find_chordless_cycle(g, v, earlier[i], earlier[j]);
          return out;
        }
      }
    }
  }
  out.chordal = true;
  out.elimination_order.assign(visit.rbegin(), visit.rend());
  return out;
}

std::vector<VertexSet> maximal_cliques(const UndirectedGraph& g) {
  ChordalityResult cr = check_chordal(g);
  if (!cr.chordal) throw NotChordal(cr.cycle);
  const int n = g.num_vertices();
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[cr.elimination_order[i]] = i;
  std::vector<VertexSet> candidates;
  candidates.reserve(n);
  for (Vertex v : cr.elimination_order) {
    VertexSet k{v};
    for (Vertex w : g.neighbors(v)) {
      if (pos[w] > pos[v]) k.push_back(w);
    }
    std::sort(k.begin(), k.end());
    candidates.push_back(std::move(k));
  }
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < candidates.size() && !dominated; ++j) {
      if (i == j || candidates[j].size() < candidates[i].size()) continue;
      if (candidates[j].size() == candidates[i].size() && j > i) continue;
      dominated = std::includes(candidates[j].begin(), candidates[j].end(),
                                candidates[i].begin(), candidates[i].end());
    }
    if (!dominated) out.push_back(candidates[i]);
  }
  return out;
}

std::size_t max_clique_size(const UndirectedGraph& g) {
  std::size_t p = 0;
  for (const VertexSet& k : maximal_cliques(g)) p = std::max(p, k.size());
  return p;
}

CliqueSeparator half_clique_separator(const UndirectedGraph& g) {
  const int n = g.num_vertices();
  if (n < 2) throw ContractViolation("separator needs at least two vertices");
  if (!g.is_connected()) throw ContractViolation("separator needs a connected graph");
  const std::vector<VertexSet> cliques = maximal_cliques(g);
  std::size_t p = 0;
  for (const VertexSet& k : cliques) p = std::max(p, k.size());

  const auto tree = clique_tree(cliques);
  VertexSet c;
  if (auto centre = centroid_clique(g, cliques, tree)) {
    c = shrink(g, cliques[*centre]);
  } else {
    for (const VertexSet& k : cliques) {
      if (balanced(g, k)) {
        c = shrink(g, k);
        break;
      }
    }
  }

  if (c.empty() || c.size() + 1 > p) {
    // Clique-tree edge separators, then maximal cliques minus one vertex.
    std::vector<VertexSet> alternatives;
    for (std::size_t i = 0; i < tree.size(); ++i) {
      for (std::size_t j : tree[i]) {
        if (j < i) continue;
        VertexSet s;
        std::set_intersection(cliques[i].begin(), cliques[i].end(), cliques[j].begin(),
                              cliques[j].end(), std::back_inserter(s));
        alternatives.push_back(std::move(s));
      }
    }
    for (const VertexSet& k : cliques) {
      for (std::size_t i = 0; i < k.size(); ++i) {
        VertexSet s = k;
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
        alternatives.push_back(std::move(s));
      }
    }
    bool found = false;
    for (const VertexSet& s : alternatives) {
      if (!s.empty() && s.size() + 1 <= p && balanced(g, s)) {
        c = shrink(g, s);
        found = true;
        break;
      }
    }
    if (!found) throw InvariantViolation("no balanced clique separator of size <= p - 1 found");
  }

  std::vector<VertexSet> comps;
  largest_remaining_component(g, c, &comps);
  std::stable_sort(comps.begin(), comps.end(),
                   [](const VertexSet& a, const VertexSet& b) { return a.size() > b.size(); });
  CliqueSeparator sep;
  sep.clique = c;
  for (const VertexSet& comp : comps) {
    VertexSet& side = sep.side_a.size() <= sep.side_b.size() ? sep.side_a : sep.side_b;
    side.insert(side.end(), comp.begin(), comp.end());
  }
  std::sort(sep.side_a.begin(), sep.side_a.end());
  std::sort(sep.side_b.begin(), sep.side_b.end());

  if (auto defect = separator_defect(g, sep)) throw InvariantViolation("separator: " + *defect);
  return sep;
}

std::optional<std::string> separator_defect(const UndirectedGraph& g, const CliqueSeparator& sep) {
  const int n = g.num_vertices();
  std::vector<int> where(n, -1);
  auto place = [&](const VertexSet& set, int label) -> std::optional<std::string> {
    for (Vertex v : set) {
      if (v < 0 || v >= n) return "vertex " + std::to_string(v) + " out of range";
      if (where[v] != -1) return "vertex " + std::to_string(v) + " listed twice";
      where[v] = label;
    }
    return std::nullopt;
  };
  if (auto e = place(sep.clique, 0)) return e;
  if (auto e = place(sep.side_a, 1)) return e;
  if (auto e = place(sep.side_b, 2)) return e;
  for (Vertex v = 0; v < n; ++v) {
    if (where[v] == -1) return "vertex " + std::to_string(v) + " missing from the partition";
  }
  if (!g.is_clique(sep.clique)) return std::string("separator is not a clique");
  const std::size_t p = max_clique_size(g);
  if (sep.clique.size() + 1 > std::max<std::size_t>(p, 2)) {
    return "separator has " + std::to_string(sep.clique.size()) + " vertices, clique number is " +
           std::to_string(p);
  }
  for (const Edge& e : g.edges()) {
    if (where[e.u] + where[e.v] == 3) {
      return "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " joins the two sides";
    }
  }
  VertexSet c = make_vertex_set(sep.clique);
  const std::size_t largest = largest_remaining_component(g, c);
  if (2 * largest > static_cast<std::size_t>(n)) {
    return "a component of size " + std::to_string(largest) + " exceeds half of " +
           std::to_string(n);
  }
  return std::nullopt;
}

}  // namespace offtarget
