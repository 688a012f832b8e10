#include "offtarget/intervention.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "offtarget/errors.hpp"

namespace offtarget {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kMassTolerance = 1e-9;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ContractViolation(std::string(what) + " must lie in [0,1], got " + std::to_string(p));
  }
}

void check_vertex(Vertex v, int n) {
  if (v < 0 || v >= n) throw ContractViolation("vertex " + std::to_string(v) + " out of range");
}

void check_set(const VertexSet& s, int n) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    check_vertex(s[i], n);
    if (i > 0 && s[i - 1] >= s[i]) throw ContractViolation("vertex set must be sorted and unique");
  }
}

void check_total(double total) {
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw ContractViolation("distribution masses sum to " + std::to_string(total));
  }
}

// Index of the outcome selected by one uniform draw over `masses`.
template <class Masses, class MassOf>
std::size_t pick(const Masses& masses, MassOf mass_of, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const double m = mass_of(masses[i]);
    if (m <= 0.0) continue;
    last_positive = i;
    acc += m;
    if (u < acc) return i;
  }
  return last_positive;  // rounding left acc just below 1
}

double membership(const FatHand& f, Vertex x) {
  if (x == f.centre) return 1.0;
  return contains(f.neighbors, x) ? f.p : 0.0;
}

}  // namespace

void validate(const DistributionSpec& d, int n) {
  std::visit(Overloaded{
                 [&](const Deterministic& x) { check_set(x.set, n); },
                 [&](const AtomicWeighted& x) {
                   double total = 0.0;
                   for (std::size_t i = 0; i < x.mass.size(); ++i) {
                     check_vertex(x.mass[i].first, n);
                     if (i > 0 && x.mass[i - 1].first >= x.mass[i].first) {
                       throw ContractViolation("atomic masses must be sorted by vertex");
                     }
                     check_probability(x.mass[i].second, "atomic mass");
                     total += x.mass[i].second;
                   }
                   check_total(total);
                 },
                 [&](const FatHand& x) {
                   check_vertex(x.centre, n);
                   check_set(x.neighbors, n);
                   if (contains(x.neighbors, x.centre)) {
                     throw ContractViolation("fat-hand centre listed among its neighbours");
                   }
                   check_probability(x.p, "fat-hand p");
                 },
                 [&](const Empirical& x) {
                   double total = 0.0;
                   for (const auto& [set, m] : x.outcomes) {
                     check_set(set, n);
                     check_probability(m, "outcome mass");
                     total += m;
                   }
                   check_total(total);
                 },
             },
             d);
}

VertexSet sample(const DistributionSpec& d, Rng& rng) {
  return std::visit(
      Overloaded{
          [](const Deterministic& x) { return x.set; },
          [&](const AtomicWeighted& x) {
            const std::size_t i = pick(x.mass, [](const auto& e) { return e.second; }, rng);
            return VertexSet{x.mass[i].first};
          },
          [&](const FatHand& x) {
            VertexSet out{x.centre};
            for (Vertex w : x.neighbors) {
              if (rng.bernoulli(x.p)) out.push_back(w);
            }
            std::sort(out.begin(), out.end());
            return out;
          },
          [&](const Empirical& x) {
            const std::size_t i = pick(x.outcomes, [](const auto& e) { return e.second; }, rng);
            return x.outcomes[i].first;
          },
      },
      d);
}

double cut_probability(const DistributionSpec& d, Edge e) {
  return std::visit(Overloaded{
                        [&](const Deterministic& x) { return cuts(x.set, e) ? 1.0 : 0.0; },
                        [&](const AtomicWeighted& x) {
                          double pu = 0.0;
                          double pv = 0.0;
                          for (const auto& [v, m] : x.mass) {
                            if (v == e.u) pu = m;
                            if (v == e.v) pv = m;
                          }
                          return pu + pv;
                        },
                        [&](const FatHand& x) {
                          const double pu = membership(x, e.u);
                          const double pv = membership(x, e.v);
                          return pu * (1.0 - pv) + pv * (1.0 - pu);
                        },
                        [&](const Empirical& x) {
                          double total = 0.0;
                          for (const auto& [set, m] : x.outcomes) {
                            if (cuts(set, e)) total += m;
                          }
                          return total;
                        },
                    },
                    d);
}

void ActionSet::validate() const {
  if (dists.empty()) throw ContractViolation("an action set needs at least one action");
  if (weights.size() != dists.size()) throw ContractViolation("one weight per action required");
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw ContractViolation("action weights must be finite and >= 0");
  }
  for (const DistributionSpec& d : dists) offtarget::validate(d, host.num_vertices());
}

std::vector<int> bfs_distances(const UndirectedGraph& g, Vertex source) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

ActionSet make_rhop(const UndirectedGraph& host, int r) {
  if (r < 0) throw ContractViolation("r-hop radius must be >= 0");
  ActionSet a{host, std::vector<double>(host.num_vertices(), 1.0), {}};
  for (Vertex v = 0; v < host.num_vertices(); ++v) {
    std::vector<int> dist = bfs_distances(host, v);
    std::vector<Vertex> ball;
    for (Vertex u = 0; u < host.num_vertices(); ++u) {
      if (dist[u] >= 0 && dist[u] <= r) ball.push_back(u);
    }
    AtomicWeighted d;
    const double m = 1.0 / static_cast<double>(ball.size());
    for (Vertex u : ball) d.mass.emplace_back(u, m);
    a.dists.emplace_back(std::move(d));
  }
  return a;
}

ActionSet make_decaying(const UndirectedGraph& host, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ContractViolation("decay alpha must lie in (0,1]");
  ActionSet a{host, std::vector<double>(host.num_vertices(), 1.0), {}};
  for (Vertex v = 0; v < host.num_vertices(); ++v) {
    std::vector<int> dist = bfs_distances(host, v);
    AtomicWeighted d;
    double total = 0.0;
    for (Vertex u = 0; u < host.num_vertices(); ++u) {
      if (dist[u] < 0) continue;
      const double w = std::pow(alpha, dist[u]);
      d.mass.emplace_back(u, w);
      total += w;
    }
    for (auto& [u, m] : d.mass) m /= total;
    a.dists.emplace_back(std::move(d));
  }
  return a;
}

ActionSet make_fathand(const UndirectedGraph& host, double p) {
  check_probability(p, "fat-hand p");
  ActionSet a{host, std::vector<double>(host.num_vertices(), 1.0), {}};
  for (Vertex v = 0; v < host.num_vertices(); ++v) {
    auto nb = host.neighbors(v);
    a.dists.emplace_back(FatHand{v, VertexSet(nb.begin(), nb.end()), p});
  }
  return a;
}

ActionSet make_on_target(const UndirectedGraph& host) {
  ActionSet a{host, std::vector<double>(host.num_vertices(), 1.0), {}};
  for (Vertex v = 0; v < host.num_vertices(); ++v) a.dists.emplace_back(Deterministic{{v}});
  return a;
}

CutProbabilityTable::CutProbabilityTable(std::size_t k, std::vector<Edge> targets)
    : k_(k), targets_(std::move(targets)), data_(k_ * targets_.size(), 0.0) {}

double CutProbabilityTable::column_total(std::size_t target) const {
  double total = 0.0;
  for (std::size_t i = 0; i < k_; ++i) total += at(i, target);
  return total;
}

std::optional<std::size_t> CutProbabilityTable::column_of(Edge e) const {
  e = Edge::of(e.u, e.v);
  for (std::size_t j = 0; j < targets_.size(); ++j) {
    if (targets_[j] == e) return j;
  }
  return std::nullopt;
}

CutProbabilityTable CutProbabilityTable::select(std::span<const std::size_t> columns) const {
  std::vector<Edge> t;
  t.reserve(columns.size());
  for (std::size_t c : columns) t.push_back(targets_[c]);
  CutProbabilityTable out(k_, std::move(t));
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) out.at(i, j) = at(i, columns[j]);
  }
  return out;
}

CutProbabilityTable cut_probabilities(const ActionSet& actions, std::span<const Edge> targets) {
  std::vector<Edge> t;
  t.reserve(targets.size());
  for (Edge e : targets) {
    e = Edge::of(e.u, e.v);
    if (!actions.host.adjacent(e.u, e.v)) {
      throw ContractViolation("target {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                              "} is not an edge of the host graph");
    }
    t.push_back(e);
  }
  CutProbabilityTable table(actions.size(), std::move(t));
  for (std::size_t i = 0; i < actions.size(); ++i) {
    for (std::size_t j = 0; j < table.num_targets(); ++j) {
      table.at(i, j) = cut_probability(actions.dists[i], table.targets()[j]);
    }
  }
  return table;
}

}  // namespace offtarget
