#include "checks.hpp"

#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "offtarget/chordal.hpp"
#include "offtarget/cover.hpp"
#include "offtarget/errors.hpp"
#include "offtarget/generators.hpp"
#include "offtarget/mec.hpp"
#include "offtarget/meek.hpp"
#include "offtarget/search.hpp"

namespace offtarget::cli {
namespace {

// Each suite returns an empty string on success, else the first failure.
using Suite = std::function<std::string(Rng&, bool)>;

std::string essential_vs_enumeration(Rng& rng, bool quick) {
  const int trials = quick ? 50 : 300;
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const Dag g = random_dag(n, 0.5, rng);
    const std::vector<Arc> invariant = mec_invariant_arcs(enumerate_mec(g));
    std::vector<Arc> essential = essential_graph(g).oriented_arcs();
    if (std::set<Arc>(invariant.begin(), invariant.end()) != std::set<Arc>(essential.begin(), essential.end())) {
      return "essential graph differs from the class intersection on a " + std::to_string(n) + "-vertex DAG";
    }
  }
  return {};
}

std::string separators(Rng& rng, bool quick) {
  const int trials = quick ? 50 : 300;
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + static_cast<int>(rng.below(quick ? 40 : 120));
    const UndirectedGraph g = random_chordal_graph(n, rng.uniform(), rng);
    if (auto defect = separator_defect(g, half_clique_separator(g))) return *defect;
  }
  return {};
}

std::string gnp_moral(Rng& rng, bool quick) {
  const int trials = quick ? 50 : 300;
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + static_cast<int>(rng.below(40));
    const Dag g = gen_gnp_tree(n, 0.1, rng);
    if (!is_moral(g)) return "gnp_tree produced a v-structure";
    if (!skeleton(g).is_connected()) return "gnp_tree produced a disconnected graph";
  }
  return {};
}

std::string search_recovers(Rng& rng, bool quick) {
  const int trials = quick ? 10 : 60;
  for (int t = 0; t < trials; ++t) {
    const int n = 5 + static_cast<int>(rng.below(quick ? 15 : 30));
    const Dag g = gen_gnp_tree(n, 0.1, rng);
    const ActionSet actions = make_rhop(skeleton(g), 1);
    const SearchResult r = off_target_search(g, actions, Rng(rng.next(), 0), Rng(rng.next(), 1));
    if (!(r.dag == g)) return "search did not recover the ground truth";
  }
  return {};
}

}  // namespace

int run_checks(std::ostream& out, std::uint64_t seed, bool quick) {
  const std::vector<std::pair<std::string, Suite>> suites{
      {"essential-graph", essential_vs_enumeration},
      {"half-clique-separator", separators},
      {"gnp-tree-moral", gnp_moral},
      {"search-recovery", search_recovers},
  };
  int failed = 0;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    Rng rng(seed, i);
    std::string error;
    try {
      error = suites[i].second(rng, quick);
    } catch (const std::exception& e) {
      error = std::string("exception: ") + e.what();
    }
    out << (error.empty() ? "ok   " : "FAIL ") << suites[i].first;
    if (!error.empty()) out << ": " << error;
    out << '\n';
    failed += error.empty() ? 0 : 1;
  }
  return failed;
}

}  // namespace offtarget::cli
