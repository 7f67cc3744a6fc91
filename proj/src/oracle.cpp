#include "polybranch/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "polybranch/errors.hpp"
#include "polybranch/union_find.hpp"

namespace polybranch {

Solution brute_force_optimum(const Instance& instance, int k, long long cap) {
  if (k < 0) throw std::invalid_argument("negative k");
  const int n = instance.node_count();

  // Per-node choices: the implicit empty set when absent, then the
  // table entries in listed order.
  struct Choice {
    const std::vector<int>* parents;
    double score;
  };
  static const std::vector<int> kNoParents;
  std::vector<std::vector<Choice>> choices(n);
  for (int v = 0; v < n; ++v) {
    bool has_empty = false;
    for (const ParentSetEntry& entry : instance.table(v)) {
      choices[v].push_back({&entry.parents, entry.score});
      if (entry.parents.empty()) has_empty = true;
    }
    if (!has_empty) choices[v].push_back({&kNoParents, 0.0});
  }

  __int128 total = 1;
  for (int v = 0; v < n; ++v) {
    total *= static_cast<long long>(choices[v].size());
    if (total > std::numeric_limits<long long>::max()) {
      total = std::numeric_limits<long long>::max();
      break;
    }
  }
  if (total > cap)
    throw SearchSpaceTooLarge(static_cast<long long>(total), cap);

  std::vector<int> cursor(n, 0);
  bool found = false;
  double best_score = 0.0;
  std::vector<int> best_cursor;
  for (;;) {
    // Feasibility: excess in-degree within budget, skeleton acyclic.
    int excess = 0;
    for (int v = 0; v < n; ++v) {
      const auto& parents = *choices[v][cursor[v]].parents;
      if (parents.size() > 1) excess += static_cast<int>(parents.size()) - 1;
    }
    if (excess <= k) {
      UnionFind uf(n);
      bool acyclic = true;
      for (int v = 0; v < n && acyclic; ++v)
        for (int p : *choices[v][cursor[v]].parents)
          if (!uf.unite(p, v)) {
            acyclic = false;
            break;
          }
      if (acyclic) {
        double score = 0.0;
        for (int v = 0; v < n; ++v) score += choices[v][cursor[v]].score;
        // Distinct assignments induce distinct arc sets, so a strict
        // score comparison plus the arc-list tie-break has a unique
        // maximum; comparing lazily via cursors avoids building arcs.
        bool take = false;
        if (!found || score > best_score) {
          take = true;
        } else if (score == best_score) {
          std::vector<Arc> candidate, incumbent;
          for (int v = 0; v < n; ++v) {
            for (int p : *choices[v][cursor[v]].parents)
              candidate.push_back({p, v});
            for (int p : *choices[v][best_cursor[v]].parents)
              incumbent.push_back({p, v});
          }
          std::sort(candidate.begin(), candidate.end());
          std::sort(incumbent.begin(), incumbent.end());
          take = candidate < incumbent;
        }
        if (take) {
          found = true;
          best_score = score;
          best_cursor = cursor;
        }
      }
    }

    int v = n - 1;
    while (v >= 0 && cursor[v] + 1 == static_cast<int>(choices[v].size()))
      cursor[v--] = 0;
    if (v < 0) break;
    ++cursor[v];
  }

  // Every instance admits the all-empty assignment, so a best exists.
  std::vector<Arc> arcs;
  for (int v = 0; v < n; ++v)
    for (int p : *choices[v][best_cursor[v]].parents) arcs.push_back({p, v});
  Solution solution;
  solution.arcs = ArcSet(n, std::move(arcs));
  solution.score = evaluate_score(instance, solution.arcs);
  solution.deletion_set = canonical_deletion_set(solution.arcs);
  solution.mode = SolverMode::BruteForce;
  return solution;
}

std::vector<int> brute_force_common_independent(const GroundSet& ground,
                                                const MatroidOracle& m1,
                                                const MatroidOracle& m2) {
  const int m = static_cast<int>(ground.size());
  if (m > 20) throw std::invalid_argument("ground set too large for exhaustion");
  std::vector<int> best;
  double best_weight = 0.0;
  std::vector<int> subset;
  for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
    subset.clear();
    double weight = 0.0;
    for (int e = 0; e < m; ++e)
      if (mask & (1ul << e)) {
        subset.push_back(e);
        weight += ground.weights[e];
      }
    if (!m1.is_independent(ground, subset)) continue;
    if (!m2.is_independent(ground, subset)) continue;
    if (weight > best_weight ||
        (weight == best_weight && !best.empty() && subset < best))
      best_weight = weight, best = subset;
  }
  return best;
}

}  // namespace polybranch
