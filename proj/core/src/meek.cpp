#include "offtarget/meek.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <queue>
#include <random>

#include "offtarget/errors.hpp"
#include "offtarget/rng.hpp"

namespace offtarget {
namespace {

bool rule_fires(const OrientationState& s, MeekRule rule, Vertex a, Vertex b) {
  const auto& sk = s.skeleton();
  switch (rule) {
    case MeekRule::kR1:
      for (Vertex c : sk.neighbors(a)) {
        if (c != b && s.has_arc(c, a) && !sk.adjacent(c, b)) return true;
      }
      return false;
    case MeekRule::kR2:
      for (Vertex c : sk.neighbors(a)) {
        if (c != b && s.has_arc(a, c) && s.has_arc(c, b)) return true;
      }
      return false;
    case MeekRule::kR3: {
      std::vector<Vertex> cand;
      for (Vertex c : sk.neighbors(a)) {
        if (c != b && s.is_undirected(c, a) && s.has_arc(c, b)) cand.push_back(c);
      }
      for (std::size_t i = 0; i < cand.size(); ++i) {
        for (std::size_t j = i + 1; j < cand.size(); ++j) {
          if (!sk.adjacent(cand[i], cand[j])) return true;
        }
      }
      return false;
    }
    case MeekRule::kR4:
      for (Vertex c : sk.neighbors(b)) {
        if (c == a || !s.has_arc(c, b) || !sk.adjacent(c, a)) continue;
        for (Vertex d : sk.neighbors(c)) {
          if (d != a && d != b && s.has_arc(d, c) && sk.adjacent(d, a) && !sk.adjacent(d, b)) {
            return true;
          }
        }
      }
      return false;
  }
  return false;
}

constexpr std::array<MeekRule, 4> kDefaultOrder = {MeekRule::kR1, MeekRule::kR2, MeekRule::kR3,
                                                   MeekRule::kR4};

// Tries both directions of an undirected edge; orients and returns the arc if
// some rule fires.
std::optional<Arc> try_orient(OrientationState& s, Edge e, std::span<const MeekRule> order) {
  for (MeekRule r : order) {
    if (rule_fires(s, r, e.u, e.v)) {
      s.orient(e.u, e.v);
      return Arc{e.u, e.v};
    }
    if (rule_fires(s, r, e.v, e.u)) {
      s.orient(e.v, e.u);
      return Arc{e.v, e.u};
    }
  }
  return std::nullopt;
}

std::size_t run_worklist(OrientationState& s, std::deque<std::size_t> queue) {
  const auto& sk = s.skeleton();
  std::vector<char> queued(sk.num_edges(), 0);
  for (std::size_t id : queue) queued[id] = 1;
  std::size_t added = 0;

  auto enqueue_around = [&](Vertex v) {
    for (std::size_t id : sk.incident_edges(v)) {
      if (!queued[id] && !s.is_oriented(id)) {
        queued[id] = 1;
        queue.push_back(id);
      }
    }
  };

  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    queued[id] = 0;
    if (s.is_oriented(id)) continue;
    auto arc = try_orient(s, sk.edge(id), kDefaultOrder);
    if (!arc) continue;
    ++added;
    enqueue_around(arc->from);
    enqueue_around(arc->to);
    for (Vertex c : s.children(arc->to)) enqueue_around(c);
  }
  return added;
}

}  // namespace

std::optional<MeekRule> meek_rule_for(const OrientationState& s, Vertex a, Vertex b) {
  if (!s.is_undirected(a, b)) return std::nullopt;
  for (MeekRule r : kDefaultOrder) {
    if (rule_fires(s, r, a, b)) return r;
  }
  return std::nullopt;
}

void require_acyclic_orientation(const OrientationState& s) {
  const int n = s.num_vertices();
  std::vector<std::size_t> indeg(n, 0);
  std::vector<std::vector<Vertex>> out(n);
  for (const Arc& a : s.oriented_arcs()) {
    out[a.from].push_back(a.to);
    ++indeg[a.to];
  }
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  int seen = 0;
  while (!ready.empty()) {
    Vertex v = ready.back();
    ready.pop_back();
    ++seen;
    for (Vertex w : out[v]) {
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  if (seen != n) throw ContractViolation("oriented arcs contain a directed cycle");
}

std::size_t meek_propagate(OrientationState& s, std::span<const Arc> new_arcs) {
  const auto& sk = s.skeleton();
  std::deque<std::size_t> queue;
  std::vector<char> queued(sk.num_edges(), 0);
  auto enqueue_around = [&](Vertex v) {
    for (std::size_t id : sk.incident_edges(v)) {
      if (!queued[id] && !s.is_oriented(id)) {
        queued[id] = 1;
        queue.push_back(id);
      }
    }
  };
  for (const Arc& a : new_arcs) {
    enqueue_around(a.from);
    enqueue_around(a.to);
    for (Vertex c : s.children(a.to)) enqueue_around(c);
  }
  return run_worklist(s, std::move(queue));
}

std::size_t meek_close_in_place(OrientationState& s) {
  std::deque<std::size_t> queue;
  for (std::size_t id = 0; id < s.num_edges(); ++id) {
    if (!s.is_oriented(id)) queue.push_back(id);
  }
  return run_worklist(s, std::move(queue));
}

OrientationState meek_closure(const OrientationState& s) {
  require_acyclic_orientation(s);
  OrientationState out = s;
  meek_close_in_place(out);
  return out;
}

OrientationState meek_closure_naive(const OrientationState& s, std::span<const MeekRule> rule_order,
                                    std::optional<std::uint64_t> shuffle_seed) {
  require_acyclic_orientation(s);
  std::vector<MeekRule> order(rule_order.begin(), rule_order.end());
  if (order.empty()) order.assign(kDefaultOrder.begin(), kDefaultOrder.end());
  std::vector<std::size_t> ids(s.num_edges());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  std::optional<Rng> rng;
  if (shuffle_seed) rng.emplace(*shuffle_seed);

  OrientationState out = s;
  bool changed = true;
  while (changed) {
    changed = false;
    if (rng) {
      for (std::size_t i = ids.size(); i > 1; --i) {
        std::swap(ids[i - 1], ids[rng->below(i)]);
      }
    }
    for (std::size_t id : ids) {
      if (out.is_oriented(id)) continue;
      if (try_orient(out, out.skeleton().edge(id), order)) changed = true;
    }
  }
  return out;
}

}  // namespace offtarget
