#include "polybranch/solver.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>

#include "polybranch/errors.hpp"
#include "polybranch/matroid.hpp"
#include "polybranch/union_find.hpp"

namespace polybranch {

const char* to_string(SolverMode mode) {
  switch (mode) {
    case SolverMode::Exhaustive: return "exhaustive";
    case SolverMode::InTree: return "intree";
    case SolverMode::Edmonds: return "edmonds";
    case SolverMode::BruteForce: return "brute";
  }
  return "unknown";
}

bool improves_solution(const Solution& challenger, const Solution& incumbent) {
  if (challenger.score != incumbent.score)
    return challenger.score > incumbent.score;
  return challenger.arcs.arcs() < incumbent.arcs.arcs();
}

void for_each_guess(const Instance& instance, int k,
                    const std::function<void(const Guess&)>& fn) {
  if (k < 0) throw std::invalid_argument("negative k");
  const int n = instance.node_count();

  std::vector<std::pair<int, int>> assignments;
  std::vector<Arc> arcs;

  Guess empty;
  empty.fixed_arcs = ArcSet(n, {});
  fn(empty);

  // Depth-first over nodes ascending; each assignment is emitted
  // before its extensions, so the stream is in preorder.
  auto extend = [&](auto&& self, int first_node, int budget,
                    const UnionFind& uf, int used) -> void {
    for (int v = first_node; v < n; ++v) {
      const auto& table = instance.table(v);
      for (int entry = 0; entry < static_cast<int>(table.size()); ++entry) {
        const std::vector<int>& parents = table[entry].parents;
        const int cost = static_cast<int>(parents.size()) - 1;
        if (parents.size() < 2 || cost > budget) continue;
        UnionFind next_uf = uf;
        bool acyclic = true;
        for (int p : parents)
          if (!next_uf.unite(p, v)) {
            acyclic = false;
            break;
          }
        if (!acyclic) continue;

        assignments.emplace_back(v, entry);
        for (int p : parents) arcs.push_back({p, v});
        Guess guess;
        guess.assignments = assignments;
        guess.fixed_arcs = ArcSet(n, arcs);
        guess.deletion_budget = used + cost;
        fn(guess);
        self(self, v + 1, budget - cost, next_uf, used + cost);
        for (std::size_t i = 0; i < parents.size(); ++i) arcs.pop_back();
        assignments.pop_back();
      }
    }
  };
  extend(extend, 0, k, UnionFind(n), 0);
}

std::vector<Guess> enumerate_guesses(const Instance& instance, int k) {
  std::vector<Guess> out;
  for_each_guess(instance, k, [&](const Guess& g) { out.push_back(g); });
  return out;
}

Solution solve_guess(const Instance& instance, const Guess& guess, int k) {
  const int n = instance.node_count();
  FixedArcs fixed(guess.fixed_arcs);

  // Candidate arcs: singleton listed parents of nodes the guess leaves
  // free, kept only when they outscore the node's empty set. Ascending
  // (head, tail) fixes the engine's tie-breaking.
  GroundSet ground;
  for (int v = 0; v < n; ++v) {
    if (fixed.is_head(v)) continue;
    const double base = instance.empty_set_score(v);
    std::vector<std::pair<int, double>> candidates;
    for (const ParentSetEntry& entry : instance.table(v)) {
      if (entry.parents.size() != 1) continue;
      const double w = entry.score - base;
      if (w > 0.0) candidates.emplace_back(entry.parents[0], w);
    }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& [u, w] : candidates) {
      ground.elements.push_back({u, v});
      ground.weights.push_back(w);
    }
  }

  InDegreeMatroid m1(fixed);
  AcyclicityMatroid m2(fixed);
  const std::vector<int> picked = max_weight_common_independent(ground, m1, m2);

  std::vector<Arc> arcs = guess.fixed_arcs.arcs();
  for (int e : picked) arcs.push_back(ground.elements[e]);

  Solution solution;
  solution.arcs = ArcSet(n, std::move(arcs));
  solution.score = evaluate_score(instance, solution.arcs);
  solution.deletion_set = canonical_deletion_set(solution.arcs);
  solution.mode = SolverMode::Exhaustive;
  solution.guess = guess;
  if (!is_k_branching(solution.arcs, k))
    throw std::logic_error("guess completion violated the deletion bound");
  return solution;
}

namespace {

Solution best_over_guesses(const Instance& instance,
                           const std::vector<Guess>& guesses, int k,
                           std::size_t begin, std::size_t end) {
  Solution best = solve_guess(instance, guesses[begin], k);
  for (std::size_t i = begin + 1; i < end; ++i) {
    Solution candidate = solve_guess(instance, guesses[i], k);
    if (improves_solution(candidate, best)) best = std::move(candidate);
  }
  return best;
}

}  // namespace

Solution solve_k_branching(const Instance& instance, int k, int jobs,
                           SolveStats* stats) {
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  const std::vector<Guess> guesses = enumerate_guesses(instance, k);
  if (stats) stats->guess_count = guesses.size();

  const std::size_t count = guesses.size();
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  if (workers <= 1)
    return best_over_guesses(instance, guesses, k, 0, count);

  // Static sharding plus a left-to-right merge: the comparator is a
  // total order over candidates with pairwise-distinct arc sets, so
  // the reduction result does not depend on the partitioning.
  std::vector<Solution> local(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t begin = count * w / workers;
      const std::size_t end = count * (w + 1) / workers;
      try {
        local[w] = best_over_guesses(instance, guesses, k, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  Solution best = local[0];
  for (std::size_t w = 1; w < workers; ++w)
    if (improves_solution(local[w], best)) best = local[w];
  return best;
}

Solution solve_intree_fpt(const Instance& instance, int k, SolveStats* stats) {
  if (k < 0) throw std::invalid_argument("negative k");
  const int n = instance.node_count();
  std::size_t count = 0;

  Guess empty;
  empty.fixed_arcs = ArcSet(n, {});
  Solution best = solve_guess(instance, empty, k);
  best.mode = SolverMode::InTree;
  ++count;

  // State of the tree under construction, arcs oriented toward the
  // root. `queue` lists tree nodes in discovery order; entries before
  // `cursor` are settled (expanded or closed as final leaves). A tree
  // corresponds to exactly one decision sequence, so no arc set is
  // evaluated twice.
  std::vector<char> in_tree(n, 0);
  std::vector<Arc> arcs;
  std::vector<int> queue;
  std::vector<std::pair<int, int>> assignments;  // (node, table entry)

  auto evaluate = [&]() {
    Guess guess;
    guess.assignments = assignments;
    std::sort(guess.assignments.begin(), guess.assignments.end());
    guess.fixed_arcs = ArcSet(n, arcs);
    for (const auto& [node, entry] : guess.assignments) {
      const int size =
          static_cast<int>(instance.table(node)[entry].parents.size());
      guess.deletion_budget += size >= 2 ? size - 1 : size;
    }
    Solution candidate = solve_guess(instance, guess, k);
    candidate.mode = SolverMode::InTree;
    ++count;
    if (improves_solution(candidate, best)) best = std::move(candidate);
  };

  auto expansions = [&](int leaf, int budget) {
    std::vector<std::pair<int, int>> out;  // (table entry, cost)
    const auto& table = instance.table(leaf);
    for (int entry = 0; entry < static_cast<int>(table.size()); ++entry) {
      const std::vector<int>& parents = table[entry].parents;
      if (parents.empty()) continue;
      // A singleton costs its full size: the lone arc counts as a
      // deletion, whereas a larger set keeps one arc.
      const int cost = parents.size() >= 2
                           ? static_cast<int>(parents.size()) - 1
                           : static_cast<int>(parents.size());
      if (cost > budget) continue;
      bool fresh = true;
      for (int p : parents)
        if (in_tree[p]) {
          fresh = false;
          break;
        }
      if (fresh) out.emplace_back(entry, cost);
    }
    return out;
  };

  auto apply = [&](int node, int entry) {
    assignments.emplace_back(node, entry);
    for (int p : instance.table(node)[entry].parents) {
      arcs.push_back({p, node});
      in_tree[p] = 1;
      queue.push_back(p);
    }
  };
  auto undo = [&](int node, int entry) {
    const auto& parents = instance.table(node)[entry].parents;
    for (std::size_t i = 0; i < parents.size(); ++i) {
      in_tree[queue.back()] = 0;
      queue.pop_back();
      arcs.pop_back();
    }
    assignments.pop_back();
  };

  auto grow = [&](auto&& self, std::size_t cursor, int budget) -> void {
    if (cursor == queue.size()) {
      evaluate();
      return;
    }
    const int leaf = queue[cursor];
    // Leave `leaf` as a final leaf of the tree.
    self(self, cursor + 1, budget);
    for (const auto& [entry, cost] : expansions(leaf, budget)) {
      apply(leaf, entry);
      self(self, cursor + 1, budget - cost);
      undo(leaf, entry);
    }
  };

  for (int root = 0; root < n; ++root) {
    in_tree[root] = 1;
    queue.push_back(root);
    // The root must gain at least one parent: an arcless tree is the
    // empty guess, already evaluated above.
    for (const auto& [entry, cost] : expansions(root, k)) {
      apply(root, entry);
      grow(grow, 1, k - cost);
      undo(root, entry);
    }
    queue.pop_back();
    in_tree[root] = 0;
  }

  if (stats) stats->guess_count = count;
  return best;
}

ArcSet multi_parent_arcs(const ArcSet& arcs) {
  const std::vector<int> deg = arcs.in_degrees();
  std::vector<Arc> out;
  for (const Arc& a : arcs.arcs())
    if (deg[a.head] >= 2) out.push_back(a);
  return ArcSet(arcs.node_count(), std::move(out));
}

bool is_in_tree(const ArcSet& arcs) {
  if (arcs.empty()) return true;
  const int n = arcs.node_count();
  std::vector<int> out_degree(n, 0);
  std::vector<char> incident(n, 0);
  for (const Arc& a : arcs.arcs()) {
    ++out_degree[a.tail];
    incident[a.tail] = incident[a.head] = 1;
  }
  int nodes = 0, sinks = 0;
  for (int v = 0; v < n; ++v) {
    if (!incident[v]) continue;
    ++nodes;
    if (out_degree[v] == 0) ++sinks;
    if (out_degree[v] > 1) return false;
  }
  if (sinks != 1) return false;
  if (arcs.size() != static_cast<std::size_t>(nodes) - 1) return false;
  UnionFind uf(n);
  int components = nodes;
  for (const Arc& a : arcs.arcs())
    if (uf.unite(a.tail, a.head)) --components;
  return components == 1;
}

}  // namespace polybranch
