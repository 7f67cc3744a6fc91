#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polybranch/model.hpp"

namespace polybranch {

enum class SolverMode { Exhaustive, InTree, Edmonds, BruteForce };

const char* to_string(SolverMode mode);

// A fixed assignment of listed parent sets to some nodes; the induced
// arc set S is the part of the network the matroid step must keep.
// Exhaustive enumeration assigns only multi-parent sets (an arc into a
// single-parent node never needs fixing); the in-tree search also
// fixes singleton sets when they are needed to keep S connected, at a
// deletion cost of the full set size.
struct Guess {
  // (node, index into the node's table), nodes strictly increasing.
  std::vector<std::pair<int, int>> assignments;
  ArcSet fixed_arcs;
  // Deleted arcs this guess accounts for: per assignment |P| - 1 when
  // |P| >= 2, otherwise |P|.
  int deletion_budget = 0;
};

struct Solution {
  ArcSet arcs;
  double score = 0.0;
  std::vector<Arc> deletion_set;
  SolverMode mode = SolverMode::Exhaustive;
  std::optional<Guess> guess;
};

// Total order used to pick among candidate solutions: higher score
// first, ties to the lexicographically smaller sorted arc list.
// Distinct candidates never share an arc set, so the optimum is unique
// and independent of enumeration order.
bool improves_solution(const Solution& challenger, const Solution& incumbent);

// Calls fn for every valid guess exactly once: budget within k, all
// sets listed with >= 2 parents, skeleton of the union acyclic. Order
// is deterministic: the empty guess first, then depth-first by node
// ascending and table position, each guess emitted before its
// extensions.
void for_each_guess(const Instance& instance, int k,
                    const std::function<void(const Guess&)>& fn);

std::vector<Guess> enumerate_guesses(const Instance& instance, int k);

// Optimal completion of one guess: candidate arcs (u, v) with v not a
// head of S, {u} listed for v and w(u, v) = f_v({u}) - f_v(empty) > 0
// feed the matroid intersection; the result is B union S. The returned
// score is recomputed from the final arc set so equal networks found
// along different routes carry bitwise-equal scores.
Solution solve_guess(const Instance& instance, const Guess& guess, int k);

struct SolveStats {
  std::size_t guess_count = 0;
};

// Score-optimal k-branching by sweeping all guesses. jobs > 1 shards
// the guess list across threads; the reduction is associative and
// order-fixed, so the result is identical for any job count.
Solution solve_k_branching(const Instance& instance, int k, int jobs = 1,
                           SolveStats* stats = nullptr);

// Restriction of the sweep to guesses whose fixed arc set forms an
// in-tree (all arcs oriented toward one root), per-root depth-first
// leaf expansion. Singleton parent sets are allowed as connectors and
// charge their full size against k. Every intermediate tree is
// evaluated, the empty guess once.
Solution solve_intree_fpt(const Instance& instance, int k,
                          SolveStats* stats = nullptr);

// Arcs into nodes of in-degree >= 2; the part of a network a guess
// would have to fix.
ArcSet multi_parent_arcs(const ArcSet& arcs);

// True when `arcs` is empty or forms a single directed tree with every
// arc oriented toward one root: connected skeleton and exactly one
// node without an outgoing arc.
bool is_in_tree(const ArcSet& arcs);

}  // namespace polybranch
