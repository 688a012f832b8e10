#pragma once

#include <cstddef>
#include <vector>

#include "offtarget/graph.hpp"
#include "offtarget/intervention.hpp"
#include "offtarget/rng.hpp"

namespace offtarget {

struct TraceStep {
  std::size_t action = 0;
  VertexSet realized;
  std::vector<Edge> newly_cut;
  double cumulative_cost = 0.0;
};

/// Everything a policy did, in order.
struct PolicyTrace {
  std::vector<TraceStep> steps;
  double total_cost = 0.0;

  std::size_t size() const { return steps.size(); }
};

struct SimulatorOptions {
  /// Check chain-component separation after every intervention.
  bool check_invariants = true;
  /// Hard stop for runaway policies; exceeding it throws std::runtime_error.
  std::size_t max_actions = 50'000'000;
};

/// The environment a policy interacts with. It alone knows the ground truth
/// and the action distributions; policies see the orientation state and the
/// cut-probability tables derived from the action set.
class Simulator {
 public:
  /// Starts from the essential graph of `truth`.
  Simulator(Dag truth, ActionSet actions, Rng env, SimulatorOptions options = {});

  /// Performs action i: samples its realized set, reveals cut edges, closes
  /// under Meek and appends to the trace.
  const InterventionEffect& act(std::size_t i);

  const OrientationState& state() const { return state_; }
  const PolicyTrace& trace() const { return trace_; }
  const ActionSet& actions() const { return actions_; }
  int num_vertices() const { return state_.num_vertices(); }
  bool recovered() const { return state_.fully_oriented(); }
  /// The fully oriented result; ContractViolation while edges remain.
  Dag result() const { return to_dag(state_); }

 private:
  Dag truth_;
  ActionSet actions_;
  Rng env_;
  SimulatorOptions options_;
  OrientationState state_;
  PolicyTrace trace_;
  InterventionEffect last_;
};

}  // namespace offtarget
