#include "offtarget/baselines.hpp"

#include <numeric>

#include "offtarget/chordal.hpp"
#include "offtarget/errors.hpp"
#include "offtarget/search.hpp"

namespace offtarget {
namespace {

std::size_t draw(const std::vector<double>& p, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    last = i;
    acc += p[i];
    if (u < acc) return i;
  }
  return last;
}

std::vector<double> normalised(const std::vector<double>& x) {
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  std::vector<double> p(x.size(), 0.0);
  if (total > 0.0) {
    for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i] / total;
  }
  return p;
}

}  // namespace

void random_policy(Simulator& sim, Rng& policy) {
  require_all_edges_reachable(sim.state(), sim.actions());
  const std::size_t k = sim.actions().size();
  while (!sim.state().fully_oriented()) sim.act(policy.below(k));
}

std::vector<double> one_shot_distribution(const OrientationState& s, const ActionSet& actions) {
  const std::vector<Edge> open = s.unoriented_edges();
  if (open.empty()) return std::vector<double>(actions.size(), 0.0);
  return normalised(solve_vlp(cut_probabilities(actions, open), actions.weights).x);
}

std::size_t one_shot_policy(Simulator& sim, Rng& policy) {
  if (sim.state().fully_oriented()) return 0;
  const std::vector<double> p = one_shot_distribution(sim.state(), sim.actions());
  while (!sim.state().fully_oriented()) sim.act(draw(p, policy));
  return 1;
}

std::optional<Vertex> SeparatorOnTarget::next(const OrientationState& s) {
  while (true) {
    if (cursor_ < queue_.size()) return queue_[cursor_++];
    if (s.fully_oriented()) return std::nullopt;
    if (!queue_.empty() && s.num_unoriented() == unoriented_at_round_start_) return std::nullopt;
    queue_.clear();
    cursor_ = 0;
    unoriented_at_round_start_ = s.num_unoriented();
    for (const ChainComponent& cc : chain_components(s)) {
      if (cc.vertices.size() < 2) continue;
      for (Vertex i : half_clique_separator(cc.graph).clique) queue_.push_back(cc.vertices[i]);
    }
  }
}

AdapterReport adapt_on_target(OnTargetPolicy& inner, Simulator& sim, Rng& policy) {
  AdapterReport report;
  while (auto v = inner.next(sim.state())) {
    ++report.requests;
    std::vector<Edge> incident;
    for (Vertex w : sim.state().undirected_neighbors(*v)) incident.push_back(Edge::of(*v, w));
    if (incident.empty()) continue;
    LpSolution lp;
    try {
      lp = solve_vlp(cut_probabilities(sim.actions(), incident), sim.actions().weights);
    } catch (const UnreachableEdge& e) {
      report.warnings.push_back("skipped vertex " + std::to_string(*v) + ": " + e.what());
      continue;
    }
    ++report.lps_solved;
    const std::vector<double> p = normalised(lp.x);
    auto open = [&]() {
      for (const Edge& e : incident) {
        if (sim.state().is_undirected(e.u, e.v)) return true;
      }
      return false;
    };
    while (open()) sim.act(draw(p, policy));
  }
  return report;
}

}  // namespace offtarget
