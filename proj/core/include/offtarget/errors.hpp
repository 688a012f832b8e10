#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace offtarget {

/// A caller broke a documented precondition (bad graph, mismatched skeletons,
/// targets that are not disjoint cliques, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A runtime check of one of the algorithmic invariants failed. Seeing this
/// means there is a bug, never bad luck.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Some target edge has zero cut probability under every action, so no policy
/// can ever orient it.
class UnreachableEdge : public std::runtime_error {
 public:
  UnreachableEdge(int u, int v)
      : std::runtime_error("edge {" + std::to_string(u) + "," + std::to_string(v) +
                           "} cannot be cut by any action"),
        u_(u),
        v_(v) {}

  int u() const noexcept { return u_; }
  int v() const noexcept { return v_; }

 private:
  int u_;
  int v_;
};

/// Ordering constraints contradict revealed arcs, each other, or chordality.
class InfeasibleOrdering : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input graph was expected to be chordal. Carries a chordless cycle.
class NotChordal : public std::invalid_argument {
 public:
  explicit NotChordal(std::vector<int> cycle)
      : std::invalid_argument("graph is not chordal"), cycle_(std::move(cycle)) {}

  const std::vector<int>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<int> cycle_;
};

}  // namespace offtarget
