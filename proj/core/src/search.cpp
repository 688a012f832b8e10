#include "offtarget/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "offtarget/chordal.hpp"
#include "offtarget/errors.hpp"
#include "offtarget/mec.hpp"

namespace offtarget {
namespace {

std::size_t ceil_log2(std::size_t x) {
  std::size_t r = 0;
  while ((std::size_t{1} << r) < x) ++r;
  return r;
}

VertexOrdering ordering_with_fallback(const OrientationState& s,
                                      std::initializer_list<std::span<const OrderingConstraint>> tiers) {
  for (auto hints : tiers) {
    try {
      return consistent_ordering(s, hints);
    } catch (const InfeasibleOrdering&) {
    }
  }
  return consistent_ordering(s);
}

// Vertex sets of the cliques formed by `targets`; ContractViolation if the
// edges are not a disjoint union of cliques.
std::vector<VertexSet> clique_parts(const OrientationState& s, std::span<const Edge> targets) {
  const int n = s.num_vertices();
  std::vector<Edge> edges;
  for (Edge e : targets) {
    e = Edge::of(e.u, e.v);
    if (!s.adjacent(e.u, e.v)) throw ContractViolation("clique target is not a skeleton edge");
    edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  UndirectedGraph tg(n, edges);
  std::vector<VertexSet> parts;
  std::size_t covered_edges = 0;
  for (VertexSet& comp : tg.connected_components()) {
    if (comp.size() < 2) continue;
    if (!tg.is_clique(comp)) {
      throw ContractViolation("target edges do not form vertex-disjoint cliques");
    }
    covered_edges += comp.size() * (comp.size() - 1) / 2;
    parts.push_back(std::move(comp));
  }
  if (covered_edges != edges.size()) throw InvariantViolation("clique decomposition lost edges");
  return parts;
}

// Edges a -> b inside `members` (all mutually undirected in the state) that
// are covered in the orientation induced by `sigma`.
std::vector<Edge> covered_under(const OrientationState& s, const VertexSet& members,
                                const VertexOrdering& sigma) {
  std::map<Vertex, std::vector<Vertex>> parents;
  for (Vertex b : members) {
    std::vector<Vertex>& pb = parents[b];
    for (Vertex a : s.undirected_neighbors(b)) {
      if (contains(members, a) && sigma.precedes(a, b)) pb.push_back(a);
    }
    std::sort(pb.begin(), pb.end());
  }
  std::vector<Edge> out;
  for (Vertex b : members) {
    for (Vertex a : parents[b]) {
      std::vector<Vertex> rest;
      for (Vertex p : parents[b]) {
        if (p != a) rest.push_back(p);
      }
      if (rest == parents[a]) out.push_back(Edge::of(a, b));
    }
  }
  return out;
}

struct LargeComponent {
  std::size_t owner = 0;  // index into the separator list
  Vertex u = 0;
  VertexSet members;
};

struct NeighbourPiece {
  std::size_t large = 0;  // index into the active large components
  VertexSet vertices;     // H'
  VertexSet separator;    // Z_{H'}
  Vertex source = -1;     // z_{H'}
};

void check_halving(const OrientationState& s, std::span<const SeparatorEntry> separators) {
  ChainComponentIndex idx = index_chain_components(s);
  for (const SeparatorEntry& e : separators) {
    for (Vertex v : e.component) {
      const std::size_t size = idx.members[idx.of_vertex[v]].size();
      if (2 * size > e.component.size()) {
        throw InvariantViolation("chain component of size " + std::to_string(size) +
                                 " survived partitioning of a component of size " +
                                 std::to_string(e.component.size()));
      }
    }
  }
}

}  // namespace

void require_all_edges_reachable(const OrientationState& s, const ActionSet& actions) {
  const std::vector<Edge> open = s.unoriented_edges();
  const CutProbabilityTable table = cut_probabilities(actions, open);
  for (std::size_t j = 0; j < open.size(); ++j) {
    if (!(table.column_total(j) > 0.0)) throw UnreachableEdge(open[j].u, open[j].v);
  }
}

std::size_t orient_internal_clique_edges(Simulator& sim, std::span<const Edge> targets, Rng& policy,
                                         const SearchOptions& options,
                                         std::span<const OrderingConstraint> hints) {
  const std::vector<VertexSet> parts = clique_parts(sim.state(), targets);
  std::size_t k_max = 0;
  for (const VertexSet& p : parts) k_max = std::max(k_max, p.size());

  auto any_open = [&]() {
    for (const VertexSet& p : parts) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
          if (sim.state().is_undirected(p[i], p[j])) return true;
        }
      }
    }
    return false;
  };

  std::size_t rounds = 0;
  while (any_open()) {
    ++rounds;
    if (options.check_invariants && rounds > ceil_log2(k_max)) {
      throw InvariantViolation("orienting cliques of size " + std::to_string(k_max) + " took " +
                               std::to_string(rounds) + " rounds");
    }
    const VertexOrdering sigma = ordering_with_fallback(sim.state(), {hints});
    const ChainComponentIndex idx = index_chain_components(sim.state());
    std::vector<Edge> round_targets;
    for (const VertexSet& p : parts) {
      std::map<std::size_t, std::vector<Vertex>> by_component;
      for (Vertex v : p) by_component[idx.of_vertex[v]].push_back(v);
      for (auto& [c, group] : by_component) {
        std::sort(group.begin(), group.end(),
                  [&](Vertex a, Vertex b) { return sigma.precedes(a, b); });
        for (std::size_t i = 0; i + 1 < group.size(); ++i) {
          round_targets.push_back(Edge::of(group[i], group[i + 1]));
        }
      }
    }
    cut_via_lp(sim, round_targets, policy, options.cut);
  }
  return rounds;
}

PhaseRecord perform_partitioning(Simulator& sim, std::span<const SeparatorEntry> separators,
                                 Rng& policy, const SearchOptions& options) {
  PhaseRecord record;
  const OrientationState& s = sim.state();

  std::vector<Edge> clique_edges;
  for (const SeparatorEntry& e : separators) {
    if (!std::includes(e.component.begin(), e.component.end(), e.separator.begin(), e.separator.end()) ||
        !s.skeleton().is_clique(e.separator)) {
      throw ContractViolation("separator is not a clique inside its component");
    }
    for (std::size_t i = 0; i < e.separator.size(); ++i) {
      for (std::size_t j = i + 1; j < e.separator.size(); ++j) {
        clique_edges.push_back(Edge::of(e.separator[i], e.separator[j]));
      }
    }
  }
  record.clique_iterations += orient_internal_clique_edges(sim, clique_edges, policy, options);

  std::vector<LargeComponent> large;
  {
    const ChainComponentIndex idx = index_chain_components(s);
    for (std::size_t h = 0; h < separators.size(); ++h) {
      const SeparatorEntry& e = separators[h];
      std::map<std::size_t, std::size_t> sizes;
      for (Vertex v : e.component) ++sizes[idx.of_vertex[v]];
      for (auto [c, size] : sizes) {
        if (2 * size <= e.component.size()) continue;
        const VertexSet& members = idx.members[c];
        VertexSet shared;
        std::set_intersection(members.begin(), members.end(), e.separator.begin(), e.separator.end(),
                              std::back_inserter(shared));
        if (shared.size() != 1) {
          throw InvariantViolation("large chain component shares " + std::to_string(shared.size()) +
                                   " vertices with its separator");
        }
        large.push_back({h, shared.front(), members});
      }
    }
  }
  record.large_components = large.size();

  const std::size_t iteration_cap = static_cast<std::size_t>(s.num_vertices()) + 1;
  while (true) {
    std::vector<std::size_t> active;
    for (std::size_t a = 0; a < large.size(); ++a) {
      if (large[a].members.size() >= 2) active.push_back(a);
    }
    if (active.empty()) break;
    if (++record.partition_iterations > iteration_cap) {
      throw InvariantViolation("partitioning loop failed to shrink the large components");
    }

    // Pieces H' of each large component's neighbourhood of u, and their separators.
    std::vector<NeighbourPiece> pieces;
    std::vector<OrderingConstraint> sigma_hints;
    std::vector<Edge> z_edges;
    for (std::size_t a : active) {
      const LargeComponent& lc = large[a];
      VertexSet nbhd;
      for (Vertex v : s.undirected_neighbors(lc.u)) {
        if (contains(lc.members, v)) nbhd.push_back(v);
      }
      std::sort(nbhd.begin(), nbhd.end());
      const UndirectedGraph local = s.skeleton().induced(nbhd);
      for (const VertexSet& comp : local.connected_components()) {
        NeighbourPiece piece;
        piece.large = a;
        for (Vertex i : comp) piece.vertices.push_back(nbhd[i]);
        if (comp.size() == 1) {
          piece.separator = piece.vertices;
        } else {
          const UndirectedGraph sub = local.induced(comp);
          for (Vertex i : half_clique_separator(sub).clique) piece.separator.push_back(piece.vertices[i]);
        }
        for (Vertex z : piece.separator) {
          sigma_hints.push_back({lc.u, z});
          for (Vertex y : piece.vertices) {
            if (!contains(piece.separator, y)) sigma_hints.push_back({z, y});
          }
        }
        for (std::size_t i = 0; i < piece.separator.size(); ++i) {
          for (std::size_t j = i + 1; j < piece.separator.size(); ++j) {
            z_edges.push_back(Edge::of(piece.separator[i], piece.separator[j]));
          }
        }
        pieces.push_back(std::move(piece));
      }
    }

    record.clique_iterations += orient_internal_clique_edges(sim, z_edges, policy, options, sigma_hints);

    for (NeighbourPiece& piece : pieces) {
      for (Vertex z : piece.separator) {
        bool has_parent = false;
        for (Vertex w : piece.separator) has_parent = has_parent || s.has_arc(w, z);
        if (has_parent) continue;
        if (piece.source >= 0) throw InvariantViolation("clique separator has two sources");
        piece.source = z;
      }
      if (piece.source < 0) throw InvariantViolation("clique separator has no source");
    }

    // sigma': u first, then every z_{H'}, then the rest of the component.
    std::vector<OrderingConstraint> strict;
    std::vector<OrderingConstraint> relaxed;
    for (std::size_t a : active) {
      const LargeComponent& lc = large[a];
      VertexSet sources;
      for (const NeighbourPiece& piece : pieces) {
        if (piece.large == a) sources.push_back(piece.source);
      }
      std::sort(sources.begin(), sources.end());
      for (Vertex y : lc.members) {
        if (y == lc.u) continue;
        strict.push_back({lc.u, y});
        relaxed.push_back({lc.u, y});
        if (contains(sources, y)) continue;
        for (Vertex z : sources) strict.push_back({z, y});
      }
    }
    const VertexOrdering sigma_prime = ordering_with_fallback(s, {strict, relaxed});

    const ChainComponentIndex idx = index_chain_components(s);
    std::vector<Edge> targets;
    for (std::size_t a : active) {
      const LargeComponent& lc = large[a];
      const VertexSet& cu = idx.members[idx.of_vertex[lc.u]];
      for (const Edge& e : covered_under(s, cu, sigma_prime)) targets.push_back(e);
      for (const NeighbourPiece& piece : pieces) {
        if (piece.large == a && s.is_undirected(lc.u, piece.source)) {
          targets.push_back(Edge::of(lc.u, piece.source));
        }
      }
    }
    cut_via_lp(sim, targets, policy, options.cut);

    const ChainComponentIndex after = index_chain_components(s);
    for (std::size_t a : active) {
      const VertexSet& now = after.members[after.of_vertex[large[a].u]];
      if (options.check_invariants && now.size() >= large[a].members.size()) {
        throw InvariantViolation("large component did not shrink in a partitioning round");
      }
      large[a].members = now;
    }
  }

  if (options.check_invariants) check_halving(s, separators);
  return record;
}

SearchResult off_target_search(const Dag& truth, const ActionSet& actions, Rng env, Rng policy,
                               const SearchOptions& options) {
  SimulatorOptions sim_options;
  sim_options.check_invariants = options.check_invariants;
  Simulator sim(truth, actions, env, sim_options);
  require_all_edges_reachable(sim.state(), sim.actions());

  SearchResult result;
  const std::size_t outer_cap = ceil_log2(static_cast<std::size_t>(std::max(truth.num_vertices(), 1))) + 1;
  while (!sim.state().fully_oriented()) {
    ++result.outer_iterations;
    if (options.check_invariants && result.outer_iterations > outer_cap) {
      throw InvariantViolation("search exceeded " + std::to_string(outer_cap) + " outer iterations");
    }
    std::vector<SeparatorEntry> entries;
    PhaseRecord phase;
    for (const ChainComponent& cc : chain_components(sim.state())) {
      if (cc.vertices.size() < 2) continue;
      SeparatorEntry e;
      e.component = cc.vertices;
      for (Vertex i : half_clique_separator(cc.graph).clique) e.separator.push_back(cc.vertices[i]);
      std::sort(e.separator.begin(), e.separator.end());
      phase.component_sizes.push_back(cc.vertices.size());
      phase.separators.push_back(e.separator);
      entries.push_back(std::move(e));
    }
    PhaseRecord part = perform_partitioning(sim, entries, policy, options);
    phase.large_components = part.large_components;
    phase.partition_iterations = part.partition_iterations;
    phase.clique_iterations = part.clique_iterations;
    result.phases.push_back(std::move(phase));
  }
  result.dag = sim.result();
  result.trace = sim.trace();
  return result;
}

double nu_max_oracle(const Dag& g, const ActionSet& actions) {
  double best = 0.0;
  for (const Dag& member : enumerate_mec(g)) best = std::max(best, verification_lower_bound(member, actions));
  return best;
}

}  // namespace offtarget
