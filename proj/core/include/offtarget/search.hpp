#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "offtarget/cover.hpp"
#include "offtarget/graph.hpp"
#include "offtarget/intervention.hpp"
#include "offtarget/ordering.hpp"
#include "offtarget/rng.hpp"
#include "offtarget/simulator.hpp"

namespace offtarget {

struct SearchOptions {
  CutViaLpOptions cut;
  /// Assert the halving, uniqueness and iteration-count properties. The
  /// simulator separately checks chain-component separation per action.
  bool check_invariants = true;
};

/// One outer iteration of the search.
struct PhaseRecord {
  std::vector<std::size_t> component_sizes;  // chain components of size >= 2 at the start
  std::vector<VertexSet> separators;         // their half clique separators
  std::size_t large_components = 0;          // components still large after the separators were oriented
  std::size_t partition_iterations = 0;      // while-loop iterations inside the partitioning step
  std::size_t clique_iterations = 0;         // rounds spent orienting clique-internal edges
};

struct SearchResult {
  Dag dag;
  PolicyTrace trace;
  std::vector<PhaseRecord> phases;
  std::size_t outer_iterations = 0;
};

/// A chain component and a half clique separator of it, in global labels.
struct SeparatorEntry {
  VertexSet component;
  VertexSet separator;
};

/// Orients every edge of `targets`, which must form vertex-disjoint cliques
/// (ContractViolation otherwise). Each round orders the state
/// (`hints` first, unconstrained if they are infeasible) and runs CutViaLP on
/// consecutive pairs of every clique part still inside one chain component.
/// Returns the number of rounds.
std::size_t orient_internal_clique_edges(Simulator& sim, std::span<const Edge> targets, Rng& policy,
                                         const SearchOptions& options = {},
                                         std::span<const OrderingConstraint> hints = {});

/// Breaks every chain component listed in `separators` into parts of at most
/// half its size. Fills the partitioning fields of the returned record.
PhaseRecord perform_partitioning(Simulator& sim, std::span<const SeparatorEntry> separators,
                                 Rng& policy, const SearchOptions& options = {});

/// Adaptive search from the essential graph of `truth` until fully oriented.
/// `env` drives the action outcomes, `policy` the rounding coins.
/// UnreachableEdge if some edge has zero cut probability under every action.
SearchResult off_target_search(const Dag& truth, const ActionSet& actions, Rng env, Rng policy,
                               const SearchOptions& options = {});

/// max over the equivalence class of `g` of the verification LP value.
/// Limited to enumerable classes (see enumerate_mec).
double nu_max_oracle(const Dag& g, const ActionSet& actions);

/// UnreachableEdge for the first unoriented edge of `s` that no action can cut.
void require_all_edges_reachable(const OrientationState& s, const ActionSet& actions);

}  // namespace offtarget
