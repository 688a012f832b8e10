#pragma once

#include <vector>

#include "offtarget/graph.hpp"

namespace offtarget {

inline constexpr int kMaxMecEnumerationVertices = 8;

/// Every DAG with the same skeleton and v-structures as `g`, sorted by arc
/// list. Brute force over vertex permutations, so n is capped at
/// kMaxMecEnumerationVertices (ContractViolation beyond that).
std::vector<Dag> enumerate_mec(const Dag& g);

/// Arcs shared by every member of the class.
std::vector<Arc> mec_invariant_arcs(const std::vector<Dag>& members);

}  // namespace offtarget
