#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "offtarget/graph.hpp"
#include "offtarget/intervention.hpp"

namespace offtarget {

/// Invalid experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphSource {
  enum class Kind { kGnpTree, kStar, kFile };
  Kind kind = Kind::kGnpTree;
  std::vector<int> sizes;  // gnp_tree: one batch per size; star: the single size
  double p = 0.1;          // gnp_tree edge probability
  int count = 1;           // gnp_tree graphs per size
  std::string root = "leaf";  // star: "leaf", "center" or a leaf index
  std::string path;        // file
  bool moralize = true;    // file: close v-structures after loading
};

struct DistributionSetting {
  std::string kind;  // rhop, decaying, fathand, on_target, hardness
  double param = 0.0;
};

struct ExperimentConfig {
  std::vector<GraphSource> graphs;
  std::vector<DistributionSetting> distributions;
  std::vector<std::string> algorithms;  // off_target, random, one_shot, separator
  int repetitions = 10;
  std::uint64_t seed = 0;
  std::string output;
};

const std::vector<std::string>& known_algorithms();

/// Parses the JSON config. Unknown keys, unknown names and out-of-range
/// values raise ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

struct GraphInstance {
  std::string id;
  Dag dag;
  bool is_star = false;  // hardness actions are only defined for stars
};

/// Generates or loads every graph the config names. Graph i of a gnp_tree
/// batch uses the stream (seed, 1000 + running instance index). Failures are
/// collected in `errors` and skipped.
std::vector<GraphInstance> build_instances(const ExperimentConfig& cfg,
                                           std::vector<std::string>& errors);

/// The action set for one distribution setting on `g`.
ActionSet make_actions(const DistributionSetting& d, const Dag& g);

struct ResultRow {
  std::string graph_id;
  int n = 0;
  std::string dist_kind;
  double dist_param = 0.0;
  std::string algorithm;
  int repetition = 0;
  std::uint64_t seed = 0;
  double cost = 0.0;
  std::size_t actions_taken = 0;
  double vlp_opt = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;        // (graph, distribution, algorithm, repetition) order
  std::vector<std::string> failures;  // one line per failed instance or run
};

/// Runs one algorithm once. Repetition seed s uses env stream (s, 0) and
/// policy stream (s, 1).
ResultRow run_once(const GraphInstance& g, const DistributionSetting& d, const ActionSet& actions,
                   const std::string& algorithm, int repetition, std::uint64_t seed,
                   double vlp_opt);

/// Runs the whole batch on `jobs` threads. The output does not depend on
/// `jobs`.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs = 1);

struct AggregateRow {
  int n = 0;
  std::string dist_kind;
  double dist_param = 0.0;
  std::string algorithm;
  std::size_t runs = 0;
  double mean_cost = 0.0;
  double std_cost = 0.0;  // sample standard deviation, 0 for one run
  double mean_actions = 0.0;
  double mean_vlp_opt = 0.0;
};

/// Groups rows by (n, dist_kind, dist_param, algorithm), in order of first
/// appearance.
std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows);

void write_raw_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

/// `results.csv` -> `results.aggregate.csv`.
std::string aggregate_path(const std::string& raw_path);

/// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace offtarget
