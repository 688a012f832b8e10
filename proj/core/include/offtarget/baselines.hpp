#pragma once

#include <optional>
#include <string>
#include <vector>

#include "offtarget/graph.hpp"
#include "offtarget/lp.hpp"
#include "offtarget/rng.hpp"
#include "offtarget/simulator.hpp"

namespace offtarget {

/// Uniformly random actions until the state is fully oriented. Solves no LP.
/// UnreachableEdge up front if some unoriented edge can never be cut.
void random_policy(Simulator& sim, Rng& policy);

/// The sampling distribution p = x / sum(x) of the one-shot policy, from the
/// covering LP over every currently unoriented edge.
std::vector<double> one_shot_distribution(const OrientationState& s, const ActionSet& actions);

/// Solves one LP on the initially unoriented edges and samples actions from
/// p = x / sum(x) until fully oriented. Returns the number of LPs solved
/// (0 if nothing was unoriented, else 1).
std::size_t one_shot_policy(Simulator& sim, Rng& policy);

/// An on-target search policy: asks for single-vertex interventions given the
/// current state; nullopt once it has nothing more to ask for.
class OnTargetPolicy {
 public:
  virtual ~OnTargetPolicy() = default;
  virtual std::optional<Vertex> next(const OrientationState& s) = 0;
};

/// Intervene on every vertex of a half clique separator of every chain
/// component, then recurse on the resulting components.
class SeparatorOnTarget : public OnTargetPolicy {
 public:
  std::optional<Vertex> next(const OrientationState& s) override;

 private:
  std::vector<Vertex> queue_;
  std::size_t cursor_ = 0;
  std::size_t unoriented_at_round_start_ = 0;
};

struct AdapterReport {
  std::size_t requests = 0;        // vertices the inner policy asked for
  std::size_t lps_solved = 0;
  std::vector<std::string> warnings;
};

/// Serves each vertex v the inner policy requests by solving the covering LP
/// on v's unoriented incident edges and sampling actions from x / sum(x)
/// until those edges are oriented. A vertex whose local LP is infeasible is
/// skipped with a warning.
AdapterReport adapt_on_target(OnTargetPolicy& inner, Simulator& sim, Rng& policy);

}  // namespace offtarget
