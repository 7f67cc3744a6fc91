#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "polybranch/errors.hpp"
#include "polybranch/generators.hpp"
#include "polybranch/matroid.hpp"
#include "polybranch/oracle.hpp"
#include "test_util.hpp"

using namespace polybranch;

namespace {

Instance example_instance() { return parse_scores(example_text()); }

// Reference optimum recomputed by direct recursion over local score
// tables, independent of the odometer in brute_force_optimum.
double recursive_best(const Instance& instance, int k) {
  const int n = instance.node_count();
  std::vector<std::vector<int>> parents(n);
  double best = -1e300;
  std::function<void(int, double)> walk = [&](int v, double acc) {
    if (v == n) {
      std::vector<Arc> arcs;
      for (int u = 0; u < n; ++u)
        for (int p : parents[u]) arcs.push_back({p, u});
      ArcSet set(n, arcs);
      if (min_deletion_size(set) > k || !skeleton_is_acyclic(set)) return;
      if (acc > best) best = acc;
      return;
    }
    parents[v].clear();
    walk(v + 1, acc + instance.empty_set_score(v));
    for (const ParentSetEntry& entry : instance.table(v)) {
      if (entry.parents.empty()) continue;
      parents[v] = entry.parents;
      walk(v + 1, acc + entry.score);
      parents[v].clear();
    }
  };
  walk(0, 0.0);
  return best;
}

}  // namespace

TEST_CASE("brute force on the reference instance") {
  const Instance instance = example_instance();
  Solution two = brute_force_optimum(instance, 2);
  CHECK(two.score == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(two.arcs ==
        ArcSet(7, {{0, 2}, {0, 4}, {1, 4}, {2, 5}, {3, 5}, {4, 6}}));
  CHECK(two.deletion_set == std::vector<Arc>{{1, 4}, {3, 5}});
  CHECK(two.mode == SolverMode::BruteForce);
  CHECK(two.score == evaluate_score(instance, two.arcs));

  Solution zero = brute_force_optimum(instance, 0);
  CHECK(zero.score == doctest::Approx(3.4).epsilon(1e-12));
  CHECK(zero.arcs == ArcSet(7, {{0, 2}, {0, 3}, {0, 4}, {2, 5}, {4, 6}}));
  CHECK(zero.deletion_set.empty());
}

TEST_CASE("brute force on a single node") {
  Instance instance({"only"}, {{}});
  Solution s = brute_force_optimum(instance, 0);
  CHECK(s.arcs == ArcSet(1, {}));
  CHECK(s.score == 0.0);

  Instance scored({"only"}, {{{{}, -0.5}}});
  Solution t = brute_force_optimum(scored, 3);
  CHECK(t.arcs.empty());
  CHECK(t.score == -0.5);
}

TEST_CASE("brute force enforces the assignment cap") {
  Instance instance = random_instance(10, 3, 3, 99);
  // Ten nodes, three listed sets plus the implicit empty set each.
  try {
    brute_force_optimum(instance, 2, 1000);
    FAIL("expected SearchSpaceTooLarge");
  } catch (const SearchSpaceTooLarge& e) {
    CHECK(e.assignment_count == 1048576);  // 4^10
    CHECK(e.cap == 1000);
  }
  CHECK_NOTHROW(brute_force_optimum(instance, 0, 1048576));
}

TEST_CASE("brute force agrees with direct recursion on random instances") {
  for (std::uint64_t seed = 200; seed <= 215; ++seed) {
    const int n = 3 + static_cast<int>(seed % 3);
    Instance instance = random_instance(n, std::min(3, n - 1), 3, seed);
    for (int k = 0; k <= 2; ++k) {
      Solution got = brute_force_optimum(instance, k);
      CHECK(got.score ==
            doctest::Approx(recursive_best(instance, k)).epsilon(1e-9));
      CHECK(is_k_branching(got.arcs, k));
      CHECK(got.score == evaluate_score(instance, got.arcs));
      CHECK(got.deletion_set == canonical_deletion_set(got.arcs));
    }
  }
}

TEST_CASE("subset search over common independent sets") {
  FixedArcs fixed(7, {{0, 4}, {1, 4}, {2, 5}, {3, 5}});
  InDegreeMatroid m1(fixed);
  AcyclicityMatroid m2(fixed);

  GroundSet g{{{0, 2}, {0, 3}, {4, 6}}, {1.0, 0.1, 0.9}};
  CHECK(brute_force_common_independent(g, m1, m2) == std::vector<int>{0, 2});

  GroundSet empty;
  CHECK(brute_force_common_independent(empty, m1, m2).empty());

  GroundSet one{{{0, 2}}, {0.7}};
  CHECK(brute_force_common_independent(one, m1, m2) == std::vector<int>{0});
  GroundSet blocked{{{0, 4}}, {0.7}};  // head already fixed
  CHECK(brute_force_common_independent(blocked, m1, m2).empty());
}
