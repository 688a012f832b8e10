// offtarget: instance generation, experiment runs, verification and
// self-checks from the command line.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "checks.hpp"
#include "offtarget/cover.hpp"
#include "offtarget/edge_list.hpp"
#include "offtarget/errors.hpp"
#include "offtarget/experiment.hpp"
#include "offtarget/generators.hpp"

namespace {

using namespace offtarget;

// "rhop:1" -> {rhop, 1}; a bare kind keeps param 0.
DistributionSetting parse_dist(const std::string& text) {
  DistributionSetting d;
  const auto colon = text.find(':');
  d.kind = text.substr(0, colon);
  if (colon != std::string::npos) d.param = std::stod(text.substr(colon + 1));
  return d;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal graph verification and search under off-target interventions"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Emit a generated graph as an edge list");
  std::string gen_kind = "gnp_tree";
  int gen_n = 10;
  double gen_p = 0.1;
  std::string gen_root = "leaf";
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--kind", gen_kind, "gnp_tree or star")->check(CLI::IsMember({"gnp_tree", "star"}));
  gen->add_option("--n", gen_n, "Number of vertices");
  gen->add_option("--p", gen_p, "Edge probability (gnp_tree)");
  gen->add_option("--root", gen_root, "Star root: leaf, center or a leaf index");
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "Execute an experiment config");
  std::string run_config;
  std::optional<std::uint64_t> run_seed;
  std::string run_out;
  int run_jobs = 1;
  std::string run_algorithms;
  run->add_option("--config", run_config, "JSON config path")->required();
  run->add_option("--seed", run_seed, "Override the base seed");
  run->add_option("--out", run_out, "Override the raw CSV path");
  run->add_option("--jobs", run_jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--algorithms", run_algorithms, "Comma-separated algorithm list override");

  // verify
  auto* ver = app.add_subcommand("verify", "Verify a hypothesis DAG against a simulated ground truth");
  std::string ver_hyp, ver_truth, ver_dist = "rhop:1";
  std::uint64_t ver_seed = 0;
  ver->add_option("--hypothesis", ver_hyp, "Hypothesis edge list")->required();
  ver->add_option("--truth", ver_truth, "Ground-truth edge list")->required();
  ver->add_option("--dist", ver_dist, "Distribution kind:param (rhop, decaying, fathand, on_target)");
  ver->add_option("--seed", ver_seed, "Random seed");

  // check
  auto* chk = app.add_subcommand("check", "Run the built-in invariant suites");
  std::uint64_t chk_seed = 1;
  bool chk_quick = false;
  chk->add_option("--seed", chk_seed, "Random seed");
  chk->add_flag("--quick", chk_quick, "Fewer trials");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      Dag g;
      if (gen_kind == "gnp_tree") {
        Rng rng(gen_seed);
        g = gen_gnp_tree(gen_n, gen_p, rng);
      } else {
        Vertex root = 0;
        if (gen_root == "center") {
          root = gen_n - 1;
        } else if (gen_root != "leaf") {
          root = std::stoi(gen_root);
        }
        g = gen_hardness_star(gen_n, root).truth;
      }
      std::ostringstream text;
      write_edge_list(text, g);
      if (gen_out.empty()) {
        std::cout << text.str();
      } else {
        write_file(gen_out, text.str());
      }
      return 0;
    }

    if (run->parsed()) {
      ExperimentConfig cfg = load_config(run_config);
      if (run_seed) cfg.seed = *run_seed;
      if (!run_out.empty()) cfg.output = run_out;
      if (!run_algorithms.empty()) {
        cfg.algorithms = split_list(run_algorithms);
        for (const std::string& a : cfg.algorithms) {
          if (std::find(known_algorithms().begin(), known_algorithms().end(), a) == known_algorithms().end()) {
            throw ConfigError("unknown algorithm '" + a + "'");
          }
        }
      }
      if (cfg.output.empty()) throw ConfigError("no output path: set \"output\" or pass --out");
      const ExperimentResult result = run_experiment(cfg, run_jobs);
      std::ostringstream raw, agg;
      write_raw_csv(raw, result.rows);
      write_aggregate_csv(agg, aggregate(result.rows));
      write_file(cfg.output, raw.str());
      write_file(aggregate_path(cfg.output), agg.str());
      for (const std::string& f : result.failures) std::cerr << "failed: " << f << '\n';
      std::cerr << result.rows.size() << " rows written to " << cfg.output << '\n';
      return result.failures.empty() ? 0 : 2;
    }

    if (ver->parsed()) {
      const Dag hyp = read_edge_list_file(ver_hyp).dag;
      const Dag truth = read_edge_list_file(ver_truth).dag;
      const ActionSet actions = make_actions(parse_dist(ver_dist), truth);
      const VerifyResult r = verify(hyp, truth, actions, Rng(ver_seed, 0), Rng(ver_seed, 1));
      std::cout << (r.confirmed ? "confirmed" : "refuted") << " cost=" << format_double(r.trace.total_cost)
                << " actions=" << r.trace.steps.size();
      if (skeleton(hyp) == actions.host) {
        std::cout << " lower_bound=" << format_double(verification_lower_bound(hyp, actions));
      }
      std::cout << '\n';
      return 0;
    }

    if (chk->parsed()) return cli::run_checks(std::cout, chk_seed, chk_quick) == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
