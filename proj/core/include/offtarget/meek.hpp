#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "offtarget/graph.hpp"

namespace offtarget {

enum class MeekRule { kR1, kR2, kR3, kR4 };

/// The rule that would orient the undirected edge {a, b} as a -> b in the
/// current state, checked in R1..R4 order; nullopt if none fires.
///
///   R1: c -> a, c !~ b
///   R2: a -> c -> b
///   R3: d - a - c undirected, d -> b <- c, c !~ d
///   R4: d ~ a ~ c, d -> c -> b, b !~ d
std::optional<MeekRule> meek_rule_for(const OrientationState& s, Vertex a, Vertex b);

/// Fixed point of R1-R4. Throws ContractViolation if the oriented arcs of
/// `s` contain a directed cycle.
OrientationState meek_closure(const OrientationState& s);

/// Worklist propagation after `new_arcs` were added to an already closed
/// state. Only edges near the new arcs are re-examined. Returns the number of
/// arcs the rules added.
std::size_t meek_propagate(OrientationState& s, std::span<const Arc> new_arcs);

/// Closes `s` in place, seeding the worklist with every undirected edge.
std::size_t meek_close_in_place(OrientationState& s);

/// Quadratic reference: sweep all undirected edges until nothing changes.
/// `rule_order` (a permutation of the four rules) and `shuffle_seed` change
/// the order rules and edges are tried in; the fixed point must not depend
/// on either.
OrientationState meek_closure_naive(const OrientationState& s,
                                    std::span<const MeekRule> rule_order = {},
                                    std::optional<std::uint64_t> shuffle_seed = std::nullopt);

/// Throws ContractViolation if the oriented arcs of `s` contain a cycle.
void require_acyclic_orientation(const OrientationState& s);

}  // namespace offtarget
