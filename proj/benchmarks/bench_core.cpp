#include <benchmark/benchmark.h>

#include <vector>

#include "offtarget/baselines.hpp"
#include "offtarget/chordal.hpp"
#include "offtarget/generators.hpp"
#include "offtarget/graph.hpp"
#include "offtarget/intervention.hpp"
#include "offtarget/lp.hpp"
#include "offtarget/meek.hpp"
#include "offtarget/rng.hpp"
#include "offtarget/search.hpp"
#include "offtarget/simulator.hpp"

using namespace offtarget;

namespace {

Dag moral_graph(int n) {
  Rng rng(7, static_cast<std::uint64_t>(n));
  return gen_gnp_tree(n, 0.1, rng);
}

}  // namespace

// Essential graph of a random DAG: v-structures plus the worklist Meek closure.
static void BM_EssentialGraph(benchmark::State& state) {
  Rng rng(1, 0);
  const Dag g = random_dag(static_cast<int>(state.range(0)), 0.15, rng);
  for (auto _ : state) benchmark::DoNotOptimize(essential_graph(g));
}
BENCHMARK(BM_EssentialGraph)->Arg(50)->Arg(200)->Arg(800);

OrientationState v_structures_only(const Dag& g) {
  OrientationState s(skeleton(g));
  for (const VStructure& v : v_structures(g)) {
    s.orient(v.u, v.v);
    s.orient(v.w, v.v);
  }
  return s;
}

static void BM_MeekWorklist(benchmark::State& state) {
  Rng rng(1, 0);
  const OrientationState s = v_structures_only(random_dag(static_cast<int>(state.range(0)), 0.15, rng));
  for (auto _ : state) benchmark::DoNotOptimize(meek_closure(s));
}
BENCHMARK(BM_MeekWorklist)->Arg(50)->Arg(200);

static void BM_MeekNaive(benchmark::State& state) {
  Rng rng(1, 0);
  const OrientationState s = v_structures_only(random_dag(static_cast<int>(state.range(0)), 0.15, rng));
  for (auto _ : state) benchmark::DoNotOptimize(meek_closure_naive(s));
}
BENCHMARK(BM_MeekNaive)->Arg(50)->Arg(200);

static void BM_HalfCliqueSeparator(benchmark::State& state) {
  Rng rng(2, 0);
  const UndirectedGraph g = random_chordal_graph(static_cast<int>(state.range(0)), 0.5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(half_clique_separator(g));
}
BENCHMARK(BM_HalfCliqueSeparator)->Arg(50)->Arg(200)->Arg(1000);

// The verification LP of a moral graph under the 1-hop actions.
static void BM_VerificationLp(benchmark::State& state) {
  const Dag g = moral_graph(static_cast<int>(state.range(0)));
  const ActionSet actions = make_rhop(skeleton(g), 1);
  const CutProbabilityTable table = cut_probabilities(actions, [&] {
    std::vector<Edge> e;
    for (const Arc& a : covered_edges(g)) e.push_back(a.edge());
    return e;
  }());
  for (auto _ : state) benchmark::DoNotOptimize(solve_vlp(table, actions.weights));
}
BENCHMARK(BM_VerificationLp)->Arg(20)->Arg(50)->Arg(100);

static void BM_OffTargetSearch(benchmark::State& state) {
  const Dag g = moral_graph(static_cast<int>(state.range(0)));
  const ActionSet actions = make_rhop(skeleton(g), 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    ++seed;
    benchmark::DoNotOptimize(off_target_search(g, actions, Rng(seed, 0), Rng(seed, 1)));
  }
}
BENCHMARK(BM_OffTargetSearch)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_RandomPolicy(benchmark::State& state) {
  const Dag g = moral_graph(static_cast<int>(state.range(0)));
  const ActionSet actions = make_rhop(skeleton(g), 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    ++seed;
    Simulator sim(g, actions, Rng(seed, 0));
    Rng policy(seed, 1);
    random_policy(sim, policy);
    benchmark::DoNotOptimize(sim.trace().total_cost);
  }
}
BENCHMARK(BM_RandomPolicy)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
