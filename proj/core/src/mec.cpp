#include "offtarget/mec.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "offtarget/errors.hpp"

namespace offtarget {

std::vector<Dag> enumerate_mec(const Dag& g) {
  const int n = g.num_vertices();
  if (n > kMaxMecEnumerationVertices) {
    throw ContractViolation("enumerate_mec refuses graphs with more than " +
                            std::to_string(kMaxMecEnumerationVertices) + " vertices");
  }
  const UndirectedGraph skel = skeleton(g);
  const std::vector<VStructure> target = v_structures(g);

  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> pos(n);
  std::set<std::vector<Arc>> seen;
  std::vector<Dag> out;
  do {
    for (int i = 0; i < n; ++i) pos[perm[i]] = i;
    std::vector<Arc> arcs;
    arcs.reserve(skel.num_edges());
    for (const Edge& e : skel.edges()) {
      arcs.push_back(pos[e.u] < pos[e.v] ? Arc{e.u, e.v} : Arc{e.v, e.u});
    }
    std::sort(arcs.begin(), arcs.end());
    if (!seen.insert(arcs).second) continue;
    Dag candidate(n, arcs);
    if (v_structures(candidate) == target) out.push_back(std::move(candidate));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::sort(out.begin(), out.end(),
            [](const Dag& a, const Dag& b) { return a.arcs() < b.arcs(); });
  return out;
}

std::vector<Arc> mec_invariant_arcs(const std::vector<Dag>& members) {
  if (members.empty()) return {};
  std::vector<Arc> common = members.front().arcs();
  for (std::size_t i = 1; i < members.size(); ++i) {
    std::vector<Arc> next;
    std::set_intersection(common.begin(), common.end(), members[i].arcs().begin(),
                          members[i].arcs().end(), std::back_inserter(next));
    common = std::move(next);
  }
  return common;
}

}  // namespace offtarget
