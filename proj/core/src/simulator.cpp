#include "offtarget/simulator.hpp"

#include <stdexcept>
#include <string>

#include "offtarget/errors.hpp"

namespace offtarget {

Simulator::Simulator(Dag truth, ActionSet actions, Rng env, SimulatorOptions options)
    : truth_(std::move(truth)),
      actions_(std::move(actions)),
      env_(env),
      options_(options),
      state_(essential_graph(truth_)) {
  actions_.validate();
  if (!(actions_.host == state_.skeleton())) {
    throw ContractViolation("action host graph differs from the skeleton of the ground truth");
  }
}

const InterventionEffect& Simulator::act(std::size_t i) {
  if (i >= actions_.size()) throw ContractViolation("action index " + std::to_string(i) + " out of range");
  if (trace_.steps.size() >= options_.max_actions) {
    throw std::runtime_error("action budget of " + std::to_string(options_.max_actions) + " exhausted");
  }
  VertexSet realized = sample(actions_.dists[i], env_);
  last_ = apply_intervention_unchecked(state_, truth_, realized);
  if (options_.check_invariants) check_separation(state_);

  TraceStep step;
  step.action = i;
  step.realized = std::move(realized);
  step.newly_cut.reserve(last_.newly_cut.size());
  for (std::size_t id : last_.newly_cut) step.newly_cut.push_back(state_.skeleton().edge(id));
  trace_.total_cost += actions_.weights[i];
  step.cumulative_cost = trace_.total_cost;
  trace_.steps.push_back(std::move(step));
  return last_;
}

}  // namespace offtarget
