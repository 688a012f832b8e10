#include "offtarget/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "offtarget/baselines.hpp"
#include "offtarget/cover.hpp"
#include "offtarget/edge_list.hpp"
#include "offtarget/errors.hpp"
#include "offtarget/generators.hpp"
#include "offtarget/search.hpp"

namespace offtarget {
namespace {

using nlohmann::json;

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

GraphSource parse_graph(const json& j, const std::string& where) {
  GraphSource g;
  const std::string kind = get<std::string>(j, "generator", where);
  if (kind == "gnp_tree") {
    only_keys(j, {"generator", "sizes", "p", "count"}, where);
    g.kind = GraphSource::Kind::kGnpTree;
    g.sizes = get<std::vector<int>>(j, "sizes", where);
    if (j.contains("p")) g.p = get<double>(j, "p", where);
    if (j.contains("count")) g.count = get<int>(j, "count", where);
    if (g.sizes.empty()) throw ConfigError(where + ": sizes is empty");
    for (int n : g.sizes) {
      if (n < 2) throw ConfigError(where + ": sizes must be >= 2");
    }
    if (!(g.p >= 0.0 && g.p <= 1.0)) throw ConfigError(where + ": p must lie in [0,1]");
    if (g.count < 1) throw ConfigError(where + ": count must be >= 1");
  } else if (kind == "star") {
    only_keys(j, {"generator", "n", "root"}, where);
    g.kind = GraphSource::Kind::kStar;
    g.sizes = {get<int>(j, "n", where)};
    if (g.sizes[0] < 3) throw ConfigError(where + ": star needs n >= 3");
    if (j.contains("root")) {
      const json& r = j.at("root");
      g.root = r.is_number_integer() ? std::to_string(r.get<int>()) : get<std::string>(j, "root", where);
    }
  } else if (kind == "file") {
    only_keys(j, {"generator", "path", "moralize"}, where);
    g.kind = GraphSource::Kind::kFile;
    g.path = get<std::string>(j, "path", where);
    if (j.contains("moralize")) g.moralize = get<bool>(j, "moralize", where);
  } else {
    throw ConfigError(where + ": unknown generator '" + kind + "'");
  }
  return g;
}

DistributionSetting parse_distribution(const json& j, const std::string& where) {
  only_keys(j, {"kind", "param"}, where);
  DistributionSetting d;
  d.kind = get<std::string>(j, "kind", where);
  if (j.contains("param")) d.param = get<double>(j, "param", where);
  if (d.kind == "rhop") {
    if (d.param < 0 || d.param != std::floor(d.param)) {
      throw ConfigError(where + ": rhop param must be a non-negative integer");
    }
  } else if (d.kind == "decaying" || d.kind == "fathand") {
    if (!(d.param > 0.0 && d.param <= 1.0)) throw ConfigError(where + ": param must lie in (0,1]");
  } else if (d.kind != "on_target" && d.kind != "hardness") {
    throw ConfigError(where + ": unknown distribution kind '" + d.kind + "'");
  }
  return d;
}

Vertex star_root(const std::string& root, int n) {
  if (root == "leaf") return 0;
  if (root == "center") return n - 1;
  int v = -1;
  const auto [ptr, ec] = std::from_chars(root.data(), root.data() + root.size(), v);
  if (ec != std::errc() || ptr != root.data() + root.size() || v < 0 || v >= n) {
    throw ConfigError("bad star root '" + root + "'");
  }
  return v;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names{"off_target", "random", "one_shot", "separator"};
  return names;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(j, {"graphs", "distributions", "algorithms", "repetitions", "seed", "output"}, "config");
  ExperimentConfig cfg;
  const json& graphs = j.at("graphs");
  if (!graphs.is_array() || graphs.empty()) throw ConfigError("config.graphs must be a non-empty array");
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    cfg.graphs.push_back(parse_graph(graphs[i], "graphs[" + std::to_string(i) + "]"));
  }
  const json& dists = j.at("distributions");
  if (!dists.is_array() || dists.empty()) throw ConfigError("config.distributions must be a non-empty array");
  for (std::size_t i = 0; i < dists.size(); ++i) {
    cfg.distributions.push_back(parse_distribution(dists[i], "distributions[" + std::to_string(i) + "]"));
  }
  cfg.algorithms = j.contains("algorithms") ? get<std::vector<std::string>>(j, "algorithms", "config")
                                            : known_algorithms();
  if (cfg.algorithms.empty()) throw ConfigError("config.algorithms is empty");
  for (const std::string& a : cfg.algorithms) {
    if (std::find(known_algorithms().begin(), known_algorithms().end(), a) == known_algorithms().end()) {
      throw ConfigError("unknown algorithm '" + a + "'");
    }
  }
  if (j.contains("repetitions")) cfg.repetitions = get<int>(j, "repetitions", "config");
  if (cfg.repetitions < 1) throw ConfigError("config.repetitions must be >= 1");
  if (j.contains("seed")) cfg.seed = get<std::uint64_t>(j, "seed", "config");
  if (j.contains("output")) cfg.output = get<std::string>(j, "output", "config");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<GraphInstance> build_instances(const ExperimentConfig& cfg, std::vector<std::string>& errors) {
  std::vector<GraphInstance> out;
  std::uint64_t running = 0;
  for (const GraphSource& src : cfg.graphs) {
    switch (src.kind) {
      case GraphSource::Kind::kGnpTree:
        for (int n : src.sizes) {
          for (int i = 0; i < src.count; ++i) {
            const std::string id = "gnp_tree-n" + std::to_string(n) + "-" + std::to_string(i);
            Rng rng(cfg.seed, 1000 + running++);
            try {
              out.push_back({id, gen_gnp_tree(n, src.p, rng), false});
            } catch (const std::exception& e) {
              errors.push_back(id + ": " + e.what());
            }
          }
        }
        break;
      case GraphSource::Kind::kStar: {
        const int n = src.sizes.at(0);
        const std::string id = "star-n" + std::to_string(n) + "-" + src.root;
        try {
          out.push_back({id, gen_hardness_star(n, star_root(src.root, n)).truth, true});
        } catch (const std::exception& e) {
          errors.push_back(id + ": " + e.what());
        }
        break;
      }
      case GraphSource::Kind::kFile:
        try {
          out.push_back({src.path, read_edge_list_file(src.path, src.moralize).dag, false});
        } catch (const std::exception& e) {
          errors.push_back(src.path + ": " + e.what());
        }
        break;
    }
  }
  return out;
}

ActionSet make_actions(const DistributionSetting& d, const Dag& g) {
  const UndirectedGraph host = skeleton(g);
  if (d.kind == "rhop") return make_rhop(host, static_cast<int>(d.param));
  if (d.kind == "decaying") return make_decaying(host, d.param);
  if (d.kind == "fathand") return make_fathand(host, d.param);
  if (d.kind == "on_target") return make_on_target(host);
  if (d.kind == "hardness") {
    const int n = g.num_vertices();
    HardnessStar star = gen_hardness_star(n, 0);
    if (!(star.actions.host == host)) throw ContractViolation("hardness actions need a star graph");
    return star.actions;
  }
  throw ContractViolation("unknown distribution kind '" + d.kind + "'");
}

ResultRow run_once(const GraphInstance& g, const DistributionSetting& d, const ActionSet& actions,
                   const std::string& algorithm, int repetition, std::uint64_t seed, double vlp_opt) {
  ResultRow row{g.id, g.dag.num_vertices(), d.kind, d.param, algorithm, repetition, seed, 0.0, 0, vlp_opt};
  const Rng env(seed, 0);
  Rng policy(seed, 1);
  PolicyTrace trace;
  if (algorithm == "off_target") {
    SearchResult r = off_target_search(g.dag, actions, env, policy);
    if (!(r.dag == g.dag)) throw InvariantViolation("search returned a different DAG");
    trace = std::move(r.trace);
  } else {
    Simulator sim(g.dag, actions, env);
    if (algorithm == "random") {
      random_policy(sim, policy);
    } else if (algorithm == "one_shot") {
      one_shot_policy(sim, policy);
    } else if (algorithm == "separator") {
      SeparatorOnTarget inner;
      adapt_on_target(inner, sim, policy);
    } else {
      throw ContractViolation("unknown algorithm '" + algorithm + "'");
    }
    if (!sim.recovered()) throw InvariantViolation(algorithm + " stopped before full orientation");
    if (!(sim.result() == g.dag)) throw InvariantViolation(algorithm + " recovered a different DAG");
    trace = sim.trace();
  }
  row.cost = trace.total_cost;
  row.actions_taken = trace.steps.size();
  return row;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs) {
  ExperimentResult result;
  const std::vector<GraphInstance> instances = build_instances(cfg, result.failures);

  struct Prepared {
    std::optional<ActionSet> actions;
    double vlp_opt = 0.0;
    std::string error;
  };
  const std::size_t nd = cfg.distributions.size();
  std::vector<Prepared> prepared(instances.size() * nd);
  parallel_for(prepared.size(), jobs, [&](std::size_t t) {
    const GraphInstance& g = instances[t / nd];
    const DistributionSetting& d = cfg.distributions[t % nd];
    try {
      ActionSet a = make_actions(d, g.dag);
      prepared[t].vlp_opt = verification_lower_bound(g.dag, a);
      prepared[t].actions = std::move(a);
    } catch (const std::exception& e) {
      prepared[t].error = g.id + " / " + d.kind + ": " + e.what();
    }
  });

  const std::size_t na = cfg.algorithms.size();
  const std::size_t nr = static_cast<std::size_t>(cfg.repetitions);
  std::vector<std::optional<ResultRow>> rows(prepared.size() * na * nr);
  std::vector<std::string> errors(rows.size());
  parallel_for(rows.size(), jobs, [&](std::size_t t) {
    const std::size_t pi = t / (na * nr);
    const Prepared& p = prepared[pi];
    if (!p.actions) return;
    const GraphInstance& g = instances[pi / nd];
    const DistributionSetting& d = cfg.distributions[pi % nd];
    const std::string& algorithm = cfg.algorithms[(t / nr) % na];
    const int rep = static_cast<int>(t % nr);
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(rep);
    try {
      rows[t] = run_once(g, d, *p.actions, algorithm, rep, seed, p.vlp_opt);
    } catch (const std::exception& e) {
      errors[t] = g.id + " / " + d.kind + " / " + algorithm + " / rep " + std::to_string(rep) + ": " + e.what();
    }
  });

  for (const Prepared& p : prepared) {
    if (!p.error.empty()) result.failures.push_back(p.error);
  }
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (rows[t]) result.rows.push_back(std::move(*rows[t]));
    if (!errors[t].empty()) result.failures.push_back(errors[t]);
  }
  return result;
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<int, std::string, double, std::string>;
  std::map<Key, std::size_t> index;
  std::vector<AggregateRow> out;
  std::vector<std::vector<const ResultRow*>> members;
  for (const ResultRow& r : rows) {
    const Key key{r.n, r.dist_kind, r.dist_param, r.algorithm};
    auto [it, inserted] = index.emplace(key, out.size());
    if (inserted) {
      out.push_back({r.n, r.dist_kind, r.dist_param, r.algorithm});
      members.emplace_back();
    }
    members[it->second].push_back(&r);
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    const auto& m = members[g];
    const double count = static_cast<double>(m.size());
    double cost = 0.0, actions = 0.0, vlp = 0.0;
    for (const ResultRow* r : m) {
      cost += r->cost;
      actions += static_cast<double>(r->actions_taken);
      vlp += r->vlp_opt;
    }
    AggregateRow& a = out[g];
    a.runs = m.size();
    a.mean_cost = cost / count;
    a.mean_actions = actions / count;
    a.mean_vlp_opt = vlp / count;
    double ss = 0.0;
    for (const ResultRow* r : m) ss += (r->cost - a.mean_cost) * (r->cost - a.mean_cost);
    a.std_cost = m.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw InvariantViolation("number formatting failed");
  return std::string(buf, ptr);
}

void write_raw_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "graph_id,n,dist_kind,dist_param,algorithm,repetition,seed,cost,actions_taken,vlp_opt\n";
  for (const ResultRow& r : rows) {
    out << csv_field(r.graph_id) << ',' << r.n << ',' << r.dist_kind << ',' << format_double(r.dist_param)
        << ',' << r.algorithm << ',' << r.repetition << ',' << r.seed << ',' << format_double(r.cost) << ','
        << r.actions_taken << ',' << format_double(r.vlp_opt) << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "n,dist_kind,dist_param,algorithm,runs,mean_cost,std_cost,mean_actions,mean_vlp_opt\n";
  for (const AggregateRow& a : rows) {
    out << a.n << ',' << a.dist_kind << ',' << format_double(a.dist_param) << ',' << a.algorithm << ','
        << a.runs << ',' << format_double(a.mean_cost) << ',' << format_double(a.std_cost) << ','
        << format_double(a.mean_actions) << ',' << format_double(a.mean_vlp_opt) << '\n';
  }
}

std::string aggregate_path(const std::string& raw_path) {
  const auto slash = raw_path.find_last_of('/');
  const auto dot = raw_path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return raw_path + ".aggregate.csv";
  }
  return raw_path.substr(0, dot) + ".aggregate" + raw_path.substr(dot);
}

}  // namespace offtarget
