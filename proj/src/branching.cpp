#include "polybranch/branching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace polybranch {

namespace {

struct LevelArc {
  int from, to;
  double weight;
};

// One contraction level. Returns indices into `arcs` forming a
// maximum-weight branching over nodes 0..n-1.
std::vector<int> solve_level(int n, const std::vector<LevelArc>& arcs) {
  // Best positive incoming arc per node; ties to the smaller tail,
  // then the earlier index.
  std::vector<int> best(n, -1);
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    const LevelArc& a = arcs[i];
    if (a.weight <= 0.0) continue;
    int& b = best[a.to];
    if (b < 0 || a.weight > arcs[b].weight ||
        (a.weight == arcs[b].weight && a.from < arcs[b].from))
      b = i;
  }

  // Walk the chosen-arc chains to find a directed cycle.
  std::vector<int> state(n, 0);  // 0 unseen, 1 on current walk, 2 done
  std::vector<int> cycle;
  for (int v0 = 0; v0 < n && cycle.empty(); ++v0) {
    if (state[v0]) continue;
    std::vector<int> walk;
    int v = v0;
    while (v >= 0 && state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = best[v] >= 0 ? arcs[best[v]].from : -1;
    }
    if (v >= 0 && state[v] == 1) {
      int u = v;
      do {
        cycle.push_back(u);
        u = arcs[best[u]].from;
      } while (u != v);
    }
    for (int u : walk) state[u] = 2;
  }

  if (cycle.empty()) {
    std::vector<int> chosen;
    for (int v = 0; v < n; ++v)
      if (best[v] >= 0) chosen.push_back(best[v]);
    return chosen;
  }

  std::vector<char> in_cycle(n, 0);
  for (int u : cycle) in_cycle[u] = 1;
  int e_min = best[cycle[0]];
  for (int u : cycle)
    if (arcs[best[u]].weight < arcs[e_min].weight) e_min = best[u];

  // Contract the cycle into one node. An arc entering the cycle at v
  // competes against keeping best[v], so its weight is adjusted by
  // -w(best[v]) + w(e_min): choosing it later means dropping best[v]
  // instead of the default drop of e_min.
  std::vector<int> id(n, -1);
  int next_id = 0;
  for (int v = 0; v < n; ++v)
    if (!in_cycle[v]) id[v] = next_id++;
  const int cycle_id = next_id++;

  std::vector<LevelArc> contracted;
  std::vector<int> source_idx;  // this-level arc behind each contracted arc
  std::vector<int> displaced;   // cycle arc an entering arc would displace
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    const LevelArc& a = arcs[i];
    const bool fc = in_cycle[a.from], tc = in_cycle[a.to];
    if (fc && tc) continue;
    LevelArc b;
    b.from = fc ? cycle_id : id[a.from];
    b.to = tc ? cycle_id : id[a.to];
    b.weight =
        tc ? a.weight - arcs[best[a.to]].weight + arcs[e_min].weight : a.weight;
    contracted.push_back(b);
    source_idx.push_back(i);
    displaced.push_back(tc ? best[a.to] : -1);
  }

  std::vector<int> sub = solve_level(next_id, contracted);

  std::vector<int> chosen;
  int drop = e_min;
  for (int j : sub) {
    chosen.push_back(source_idx[j]);
    if (contracted[j].to == cycle_id) drop = displaced[j];
  }
  for (int u : cycle)
    if (best[u] != drop) chosen.push_back(best[u]);
  return chosen;
}

}  // namespace

ArcSet max_weight_branching(int node_count,
                            const std::vector<WeightedArc>& arcs) {
  std::vector<LevelArc> level;
  level.reserve(arcs.size());
  for (const WeightedArc& wa : arcs) {
    if (!std::isfinite(wa.weight))
      throw std::invalid_argument("non-finite arc weight");
    level.push_back({wa.arc.tail, wa.arc.head, wa.weight});
  }
  {
    std::vector<Arc> plain;
    plain.reserve(arcs.size());
    for (const WeightedArc& wa : arcs) plain.push_back(wa.arc);
    std::sort(plain.begin(), plain.end());
    if (std::adjacent_find(plain.begin(), plain.end()) != plain.end())
      throw std::invalid_argument("duplicate arc in weight list");
    // Endpoint validation happens here as well.
    ArcSet(node_count, std::move(plain));
  }

  std::vector<int> chosen = solve_level(node_count, level);
  std::vector<Arc> out;
  out.reserve(chosen.size());
  for (int i : chosen) out.push_back(arcs[i].arc);
  return ArcSet(node_count, std::move(out));
}

}  // namespace polybranch
