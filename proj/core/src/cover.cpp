#include "offtarget/cover.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "offtarget/errors.hpp"

namespace offtarget {
namespace {

constexpr int kMaxFatHandExpansionBits = 20;

LpSolution solve_columns(std::size_t k, std::size_t m, std::span<const double> coverage,
                         std::span<const double> weights, const std::vector<std::size_t>& columns,
                         const LpOptions& options) {
  std::vector<double> a(k * columns.size());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) a[i * columns.size() + c] = coverage[i * m + columns[c]];
  }
  return solve_covering_lp(k, columns.size(), a, weights, options);
}

std::vector<double> rounding_targets(const LpSolution& lp, std::size_t d, double constant) {
  const double log_d = std::log(static_cast<double>(std::max<std::size_t>(d, 2)));
  std::vector<double> y(lp.x.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = constant * lp.x[i] * log_d;
  return y;
}

std::vector<double> flatten(const CutProbabilityTable& t) {
  std::vector<double> out;
  out.reserve(t.num_actions() * t.num_targets());
  for (std::size_t i = 0; i < t.num_actions(); ++i) {
    auto row = t.row(i);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

CutViaLpReport run_on_simulator(Simulator& sim, std::span<const Edge> targets, Rng& policy,
                                const CutViaLpOptions& options, std::function<bool()> abort) {
  const OrientationState& s = sim.state();
  std::vector<Edge> unique;
  std::vector<int> target_of(s.num_edges(), -1);
  for (Edge e : targets) {
    auto id = s.skeleton().edge_id(e.u, e.v);
    if (!id) throw ContractViolation("target is not an edge of the skeleton");
    if (target_of[*id] >= 0) continue;
    target_of[*id] = static_cast<int>(unique.size());
    unique.push_back(Edge::of(e.u, e.v));
  }
  const CutProbabilityTable table = cut_probabilities(sim.actions(), unique);
  for (std::size_t j = 0; j < table.num_targets(); ++j) {
    if (!(table.column_total(j) > 0.0)) throw UnreachableEdge(unique[j].u, unique[j].v);
  }
  std::vector<char> done(unique.size(), 0);
  for (std::size_t j = 0; j < unique.size(); ++j) {
    done[j] = s.is_cut(*s.skeleton().edge_id(unique[j].u, unique[j].v)) ? 1 : 0;
  }

  CutViaLpHooks hooks;
  hooks.execute = [&](std::size_t i) {
    std::vector<std::size_t> hit;
    for (std::size_t id : sim.act(i).newly_cut) {
      if (target_of[id] >= 0) hit.push_back(static_cast<std::size_t>(target_of[id]));
    }
    return hit;
  };
  hooks.abort = std::move(abort);
  hooks.resolved = [&]() {
    for (const Edge& e : unique) {
      if (sim.state().is_undirected(e.u, e.v)) return false;
    }
    return true;
  };
  const std::vector<double> coverage = flatten(table);
  return cut_via_lp_core(table.num_actions(), table.num_targets(), coverage, sim.actions().weights,
                         hooks, policy, options, done);
}

}  // namespace

CutViaLpReport cut_via_lp_core(std::size_t k, std::size_t m, std::span<const double> coverage,
                               std::span<const double> weights, const CutViaLpHooks& hooks,
                               Rng& policy, const CutViaLpOptions& options,
                               std::span<const char> initially_covered) {
  if (coverage.size() != k * m) throw ContractViolation("coverage table has the wrong size");
  if (!initially_covered.empty() && initially_covered.size() != m) {
    throw ContractViolation("initially_covered must have one flag per target");
  }
  if (!(options.constant > 0.0)) throw ContractViolation("rounding constant must be positive");
  CutViaLpReport report;
  std::vector<char> covered(m, 0);
  std::size_t remaining = m;
  if (!initially_covered.empty()) {
    for (std::size_t j = 0; j < m; ++j) {
      if (initially_covered[j]) {
        covered[j] = 1;
        --remaining;
      }
    }
  }
  if (remaining == 0) return report;

  auto uncovered_columns = [&]() {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < m; ++j) {
      if (!covered[j]) cols.push_back(j);
    }
    return cols;
  };

  std::vector<std::size_t> cols = uncovered_columns();
  report.lp = solve_columns(k, m, coverage, weights, cols, options.lp);
  std::vector<double> y = rounding_targets(report.lp, cols.size(), options.constant);

  while (remaining > 0) {
    if (report.rounds >= options.max_rounds) {
      throw std::runtime_error("CutViaLP exceeded " + std::to_string(options.max_rounds) + " rounds");
    }
    if (report.rounds > 0 && options.resolve_residual) {
      cols = uncovered_columns();
      y = rounding_targets(solve_columns(k, m, coverage, weights, cols, options.lp), cols.size(),
                           options.constant);
    }
    ++report.rounds;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(y[i] > 0.0)) continue;
      const double whole = std::floor(y[i]);
      const double frac = y[i] - whole;
      std::size_t times = static_cast<std::size_t>(whole);
      if (frac > 0.0 && policy.uniform() < frac) ++times;
      for (std::size_t t = 0; t < times; ++t) {
        for (std::size_t j : hooks.execute(i)) {
          if (j < m && !covered[j]) {
            covered[j] = 1;
            --remaining;
          }
        }
        report.cost += weights[i];
        ++report.executions;
        if (hooks.abort && hooks.abort()) {
          report.aborted = true;
          return report;
        }
        if (options.stop_when_resolved && hooks.resolved && hooks.resolved()) {
          report.resolved_early = true;
          return report;
        }
      }
    }
  }
  return report;
}

CutViaLpReport cut_via_lp(Simulator& sim, std::span<const Edge> targets, Rng& policy,
                          const CutViaLpOptions& options) {
  return run_on_simulator(sim, targets, policy, options, nullptr);
}

LpSolution verification_lp(const Dag& g, const ActionSet& actions, LpOptions options) {
  std::vector<Edge> targets;
  for (const Arc& a : covered_edges(g)) targets.push_back(a.edge());
  return solve_vlp(cut_probabilities(actions, targets), actions.weights, options);
}

double verification_lower_bound(const Dag& g, const ActionSet& actions, LpOptions options) {
  return verification_lp(g, actions, options).objective;
}

VerifyResult verify(const Dag& hypothesis, const Dag& truth, const ActionSet& actions, Rng env,
                    Rng policy, const CutViaLpOptions& options) {
  if (!(skeleton(hypothesis) == skeleton(truth))) {
    throw ContractViolation("hypothesis and ground truth have different skeletons");
  }
  VerifyResult out;
  if (v_structures(hypothesis) != v_structures(truth)) {
    out.state = essential_graph(truth);
    return out;
  }
  Simulator sim(truth, actions, env);
  auto contradicted = [&]() {
    const OrientationState& s = sim.state();
    for (std::size_t id = 0; id < s.num_edges(); ++id) {
      if (auto a = s.arc(id); a && !hypothesis.has_arc(a->from, a->to)) return true;
    }
    return false;
  };
  bool refuted = contradicted();
  if (!refuted) {
    std::vector<Edge> targets;
    for (const Arc& a : covered_edges(hypothesis)) targets.push_back(a.edge());
    refuted = run_on_simulator(sim, targets, policy, options, contradicted).aborted;
  }
  out.confirmed = !refuted && sim.recovered() && agrees_with(sim.state(), hypothesis);
  out.trace = sim.trace();
  out.state = sim.state();
  return out;
}

CoverInstance make_cover_instance(std::size_t d, std::vector<double> weights,
                                  std::vector<Empirical> sets) {
  if (weights.size() != sets.size()) throw ContractViolation("one weight per set required");
  for (const Empirical& s : sets) validate(DistributionSpec{s}, static_cast<int>(d));
  CoverInstance inst;
  inst.d = d;
  inst.weights = std::move(weights);
  inst.sets = std::move(sets);
  inst.coverage.assign(inst.sets.size() * d, 0.0);
  for (std::size_t i = 0; i < inst.sets.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double total = 0.0;
      for (const auto& [subset, m] : inst.sets[i].outcomes) {
        if (contains(subset, static_cast<Vertex>(j))) total += m;
      }
      inst.coverage[i * d + j] = total;
    }
  }
  return inst;
}

CoverInstance verification_to_cover(const Dag& g, const ActionSet& actions) {
  std::vector<Edge> elements;
  for (const Arc& a : covered_edges(g)) elements.push_back(a.edge());
  const int n = g.num_vertices();

  auto cut_subset = [&](const VertexSet& realized) {
    VertexSet out;
    for (std::size_t j = 0; j < elements.size(); ++j) {
      if (cuts(realized, elements[j])) out.push_back(static_cast<Vertex>(j));
    }
    return out;
  };
  std::vector<char> touches(n, 0);
  for (const Edge& e : elements) touches[e.u] = touches[e.v] = 1;

  std::vector<Empirical> sets;
  sets.reserve(actions.size());
  for (const DistributionSpec& spec : actions.dists) {
    Empirical out;
    if (const auto* det = std::get_if<Deterministic>(&spec)) {
      out.outcomes.emplace_back(cut_subset(det->set), 1.0);
    } else if (const auto* atomic = std::get_if<AtomicWeighted>(&spec)) {
      for (const auto& [v, m] : atomic->mass) out.outcomes.emplace_back(cut_subset({v}), m);
    } else if (const auto* fat = std::get_if<FatHand>(&spec)) {
      std::vector<Vertex> relevant;
      for (Vertex w : fat->neighbors) {
        if (touches[w]) relevant.push_back(w);
      }
      if (relevant.size() > kMaxFatHandExpansionBits) {
        throw ContractViolation("fat-hand action touches too many covered edges to expand");
      }
      const std::size_t count = std::size_t{1} << relevant.size();
      for (std::size_t mask = 0; mask < count; ++mask) {
        double m = 1.0;
        VertexSet realized{fat->centre};
        for (std::size_t b = 0; b < relevant.size(); ++b) {
          if (mask >> b & 1U) {
            m *= fat->p;
            realized.push_back(relevant[b]);
          } else {
            m *= 1.0 - fat->p;
          }
        }
        if (m <= 0.0) continue;
        out.outcomes.emplace_back(cut_subset(make_vertex_set(std::move(realized))), m);
      }
    } else {
      for (const auto& [set, m] : std::get<Empirical>(spec).outcomes) {
        out.outcomes.emplace_back(cut_subset(set), m);
      }
    }
    sets.push_back(std::move(out));
  }
  return make_cover_instance(elements.size(), actions.weights, std::move(sets));
}

std::pair<Dag, ActionSet> cover_to_verification(const CoverInstance& inst) {
  const int n = static_cast<int>(2 * inst.d);
  std::vector<Arc> arcs;
  for (std::size_t j = 0; j < inst.d; ++j) {
    arcs.push_back({static_cast<Vertex>(2 * j), static_cast<Vertex>(2 * j + 1)});
  }
  Dag g(n, arcs);
  ActionSet actions{skeleton(g), inst.weights, {}};
  for (const Empirical& s : inst.sets) {
    Empirical e;
    for (const auto& [subset, m] : s.outcomes) {
      VertexSet vs;
      for (Vertex j : subset) vs.push_back(2 * j);
      e.outcomes.emplace_back(std::move(vs), m);
    }
    actions.dists.emplace_back(std::move(e));
  }
  return {std::move(g), std::move(actions)};
}

CoverRun simulate_cover(const CoverInstance& inst, Rng env, Rng policy,
                        const CutViaLpOptions& options) {
  for (std::size_t j = 0; j < inst.d; ++j) {
    double total = 0.0;
    for (std::size_t i = 0; i < inst.k(); ++i) total += inst.mu(i, j);
    if (!(total > 0.0)) {
      throw ContractViolation("element " + std::to_string(j) + " cannot be covered by any set");
    }
  }
  std::vector<DistributionSpec> specs(inst.sets.begin(), inst.sets.end());
  CutViaLpHooks hooks;
  hooks.execute = [&](std::size_t i) {
    VertexSet got = sample(specs[i], env);
    return std::vector<std::size_t>(got.begin(), got.end());
  };
  CutViaLpReport r = cut_via_lp_core(inst.k(), inst.d, inst.coverage, inst.weights, hooks, policy, options);
  return {r.cost, r.executions, r.rounds};
}

}  // namespace offtarget
