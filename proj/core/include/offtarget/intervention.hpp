#pragma once

#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "offtarget/graph.hpp"
#include "offtarget/rng.hpp"

namespace offtarget {

/// Always intervenes on the same set.
struct Deterministic {
  VertexSet set;
};

/// Intervenes on exactly one vertex, drawn with the given masses. Entries are
/// sorted by vertex; masses are non-negative and sum to 1.
struct AtomicWeighted {
  std::vector<std::pair<Vertex, double>> mass;
};

/// Always intervenes on `centre`, plus each of `neighbors` independently
/// with probability `p`.
struct FatHand {
  Vertex centre = 0;
  VertexSet neighbors;
  double p = 0.0;
};

/// Explicit finite distribution over vertex sets. Outcome order matters only
/// for sampling reproducibility.
struct Empirical {
  std::vector<std::pair<VertexSet, double>> outcomes;
};

using DistributionSpec = std::variant<Deterministic, AtomicWeighted, FatHand, Empirical>;

/// Throws ContractViolation on out-of-range vertices, probabilities outside
/// [0,1], or masses that do not sum to 1 within 1e-9.
void validate(const DistributionSpec& d, int n);

/// One realized intervention set.
VertexSet sample(const DistributionSpec& d, Rng& rng);

/// Pr[exactly one endpoint of e is intervened on].
double cut_probability(const DistributionSpec& d, Edge e);

struct ActionSet {
  UndirectedGraph host;
  std::vector<double> weights;
  std::vector<DistributionSpec> dists;

  std::size_t size() const { return dists.size(); }
  /// k >= 1, one finite non-negative weight per action, valid distributions.
  void validate() const;
};

/// One unit-weight action per vertex v, uniform over the closed r-hop ball of v.
ActionSet make_rhop(const UndirectedGraph& host, int r);
/// One unit-weight action per vertex v, mass alpha^dist(v, u) on every u
/// reachable from v, normalised.
ActionSet make_decaying(const UndirectedGraph& host, double alpha);
/// One unit-weight action per vertex v: FatHand(v, N(v), p).
ActionSet make_fathand(const UndirectedGraph& host, double p);
/// One unit-weight action per vertex v: Deterministic({v}).
ActionSet make_on_target(const UndirectedGraph& host);

/// Dense k x m table of c_i(e) over a list of target edges.
class CutProbabilityTable {
 public:
  CutProbabilityTable() = default;
  CutProbabilityTable(std::size_t k, std::vector<Edge> targets);

  std::size_t num_actions() const { return k_; }
  std::size_t num_targets() const { return targets_.size(); }
  const std::vector<Edge>& targets() const { return targets_; }

  double at(std::size_t action, std::size_t target) const { return data_[action * targets_.size() + target]; }
  double& at(std::size_t action, std::size_t target) { return data_[action * targets_.size() + target]; }
  std::span<const double> row(std::size_t action) const {
    return {data_.data() + action * targets_.size(), targets_.size()};
  }

  /// sum_i c_i(target j)
  double column_total(std::size_t target) const;
  std::optional<std::size_t> column_of(Edge e) const;

  /// Sub-table on the given target columns, in that order.
  CutProbabilityTable select(std::span<const std::size_t> columns) const;

  friend bool operator==(const CutProbabilityTable&, const CutProbabilityTable&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<Edge> targets_;
  std::vector<double> data_;
};

/// ContractViolation if some target is not an edge of actions.host.
CutProbabilityTable cut_probabilities(const ActionSet& actions, std::span<const Edge> targets);

/// Hop distances from `source`; -1 for unreachable vertices.
std::vector<int> bfs_distances(const UndirectedGraph& g, Vertex source);

}  // namespace offtarget
