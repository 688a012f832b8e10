#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "offtarget/graph.hpp"
#include "offtarget/intervention.hpp"
#include "offtarget/lp.hpp"
#include "offtarget/rng.hpp"
#include "offtarget/simulator.hpp"

namespace offtarget {

struct CutViaLpOptions {
  /// Multiplier in y_i = constant * x_i * ln(max(d, 2)).
  double constant = 9.0;
  /// Re-solve the LP on the still-uncut targets before every round after
  /// the first. Off: y is computed once.
  bool resolve_residual = false;
  /// Stop as soon as every target is oriented, cut or not.
  bool stop_when_resolved = false;
  std::size_t max_rounds = 1'000'000;
  LpOptions lp;
};

struct CutViaLpReport {
  LpSolution lp;  // the first LP solved
  std::size_t rounds = 0;
  std::size_t executions = 0;
  double cost = 0.0;
  bool aborted = false;         // the abort hook fired
  bool resolved_early = false;  // stop_when_resolved fired
};

/// Hooks that tie the rounding loop to an environment.
struct CutViaLpHooks {
  /// Runs an action, returns the target indices it covered (repeats allowed).
  std::function<std::vector<std::size_t>(std::size_t action)> execute;
  /// Checked after every execution; true stops the loop with `aborted`.
  std::function<bool()> abort;
  /// Checked after every execution when stop_when_resolved is set.
  std::function<bool()> resolved;
};

/// The rounding loop over an abstract k x m coverage table. Each round runs
/// action i floor(y_i) times, then once more with probability frac(y_i)
/// (one uniform from `policy`, drawn only when frac(y_i) > 0), in action
/// order, and repeats until every target is covered.
///
/// `initially_covered` (size m or empty) marks targets that need no work.
CutViaLpReport cut_via_lp_core(std::size_t k, std::size_t m, std::span<const double> coverage,
                               std::span<const double> weights, const CutViaLpHooks& hooks,
                               Rng& policy, const CutViaLpOptions& options = {},
                               std::span<const char> initially_covered = {});

/// CutViaLP on `targets` (edges of the simulator's skeleton) until each is
/// cut. Targets the state has already cut count as done.
CutViaLpReport cut_via_lp(Simulator& sim, std::span<const Edge> targets, Rng& policy,
                          const CutViaLpOptions& options = {});

/// The covering LP on the covered edges of `g`; its value lower-bounds the
/// expected cost of any policy that verifies g.
LpSolution verification_lp(const Dag& g, const ActionSet& actions, LpOptions options = {});
double verification_lower_bound(const Dag& g, const ActionSet& actions, LpOptions options = {});

struct VerifyResult {
  bool confirmed = false;
  PolicyTrace trace;
  OrientationState state;
};

/// Runs CutViaLP on the covered edges of `hypothesis` against `truth`.
/// Stops with confirmed = false as soon as a revealed arc contradicts the
/// hypothesis. A hypothesis with different v-structures is refuted without
/// acting. ContractViolation on differing skeletons.
VerifyResult verify(const Dag& hypothesis, const Dag& truth, const ActionSet& actions, Rng env,
                    Rng policy, const CutViaLpOptions& options = {});

/// Stochastic set cover: d elements, k weighted random sets. Set i is an
/// explicit distribution over element subsets (Empirical with elements in
/// place of vertices).
struct CoverInstance {
  std::size_t d = 0;
  std::vector<double> weights;
  std::vector<Empirical> sets;
  std::vector<double> coverage;  // k x d, Pr[set i covers element j]

  std::size_t k() const { return sets.size(); }
  double mu(std::size_t i, std::size_t j) const { return coverage[i * d + j]; }
};

/// Builds an instance and its coverage table (masses summed in outcome order).
CoverInstance make_cover_instance(std::size_t d, std::vector<double> weights,
                                  std::vector<Empirical> sets);

/// Elements are the covered edges of `g` (sorted); each action becomes the
/// distribution of the set of covered edges it cuts. Fat-hand actions are
/// expanded over the neighbours that touch a covered edge, at most 2^20
/// outcomes per action (ContractViolation beyond).
CoverInstance verification_to_cover(const Dag& g, const ActionSet& actions);

/// 2d vertices with arcs 2j -> 2j+1; set i becomes an empirical action over
/// the vertices {2j : j in S}.
std::pair<Dag, ActionSet> cover_to_verification(const CoverInstance& inst);

struct CoverRun {
  double cost = 0.0;
  std::size_t executions = 0;
  std::size_t rounds = 0;
};

/// CutViaLP directly on a cover instance. `env` draws the realized subsets,
/// `policy` the rounding coins, exactly as in the graph version.
CoverRun simulate_cover(const CoverInstance& inst, Rng env, Rng policy,
                        const CutViaLpOptions& options = {});

}  // namespace offtarget
