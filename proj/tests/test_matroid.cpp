#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polybranch/errors.hpp"
#include "polybranch/matroid.hpp"
#include "polybranch/oracle.hpp"
#include "polybranch/union_find.hpp"

using namespace polybranch;

namespace {

GroundSet make_ground(std::vector<Arc> arcs, std::vector<double> weights) {
  return GroundSet{std::move(arcs), std::move(weights)};
}

double weight_of(const GroundSet& g, const std::vector<int>& subset) {
  double w = 0.0;
  for (int e : subset) w += g.weights[e];
  return w;
}

// The shared test configuration: S fixes two parents each for nodes 5
// and 6 of a 7-node universe (0-based 4 and 5).
FixedArcs two_pair_fixed() {
  return FixedArcs(7, {{0, 4}, {1, 4}, {2, 5}, {3, 5}});
}

}  // namespace

TEST_CASE("FixedArcs precomputes heads and skeleton components") {
  FixedArcs fixed = two_pair_fixed();
  CHECK(fixed.heads() == std::vector<int>{4, 5});
  CHECK(fixed.is_head(4));
  CHECK(!fixed.is_head(0));
  CHECK(fixed.component(0) == fixed.component(1));
  CHECK(fixed.component(0) == fixed.component(4));
  CHECK(fixed.component(2) == fixed.component(5));
  CHECK(fixed.component(0) != fixed.component(2));
  CHECK(fixed.component(6) != fixed.component(0));
  CHECK(fixed.component(6) != fixed.component(2));
  CHECK_THROWS_AS(FixedArcs(3, {{0, 1}, {1, 2}, {2, 0}}), NotAPolytree);
}

TEST_CASE("in-degree matroid independence") {
  FixedArcs fixed(7, {{0, 4}, {1, 4}});
  InDegreeMatroid m1(fixed);

  GroundSet g = make_ground({{0, 2}, {2, 5}, {3, 2}, {0, 4}}, {1, 1, 1, 1});
  CHECK(m1.is_independent(g, std::vector<int>{0, 1}));
  CHECK(!m1.is_independent(g, std::vector<int>{0, 2}));  // both enter node 2
  CHECK(!m1.is_independent(g, std::vector<int>{3}));     // head in H(S)
  CHECK(m1.is_independent(g, std::vector<int>{}));
}

TEST_CASE("in-degree matroid circuits") {
  FixedArcs fixed(7, {{2, 5}, {3, 5}});
  InDegreeMatroid m1(fixed);
  GroundSet g = make_ground({{0, 2}, {3, 2}, {0, 3}, {4, 5}}, {1, 1, 1, 1});

  std::vector<int> I{0};
  CHECK(m1.circuit(g, I, 1) == std::vector<int>{0, 1});  // same head 2
  CHECK(m1.circuit(g, I, 3) == std::vector<int>{3});     // head 5 in H(S)
  CHECK(!m1.circuit(g, I, 2));
}

TEST_CASE("acyclicity matroid independence") {
  FixedArcs fixed = two_pair_fixed();
  AcyclicityMatroid m2(fixed);

  // Elements: (0,2) and (4,6) match the optimum completion; (0,3)
  // closes a cycle with (0,2) through the component {2,3,5}; (2,3)
  // lies inside one component.
  GroundSet g = make_ground({{0, 2}, {4, 6}, {0, 3}, {2, 3}}, {1, 1, 1, 1});
  CHECK(m2.is_independent(g, std::vector<int>{0, 1}));
  CHECK(!m2.is_independent(g, std::vector<int>{0, 2}));
  CHECK(!m2.is_independent(g, std::vector<int>{3}));
  CHECK(m2.is_independent(g, std::vector<int>{}));
}

TEST_CASE("acyclicity matroid circuits") {
  FixedArcs fixed(7, {{2, 5}, {3, 5}});
  AcyclicityMatroid m2(fixed);
  GroundSet g = make_ground({{0, 2}, {0, 3}, {2, 3}, {0, 6}}, {1, 1, 1, 1});

  std::vector<int> I{0};
  CHECK(m2.circuit(g, I, 1) == std::vector<int>{0, 1});
  CHECK(!m2.circuit(g, std::vector<int>{}, 1));
  CHECK(m2.circuit(g, std::vector<int>{}, 2) == std::vector<int>{2});  // loop
  CHECK(!m2.circuit(g, I, 3));
}

TEST_CASE("engine reproduces the two-pair optimum completion") {
  FixedArcs fixed = two_pair_fixed();
  InDegreeMatroid m1(fixed);
  AcyclicityMatroid m2(fixed);
  // Candidate singleton arcs of the seven-node example with both pair
  // sets fixed: only heads 2, 3, 6 remain, weights from the table.
  GroundSet g = make_ground({{0, 2}, {0, 3}, {4, 6}}, {1.0, 0.1, 0.9});
  std::vector<int> got = max_weight_common_independent(g, m1, m2);
  CHECK(got == std::vector<int>{0, 2});
  CHECK(weight_of(g, got) == doctest::Approx(1.9).epsilon(1e-12));
}

TEST_CASE("engine handles trivial ground sets") {
  FixedArcs fixed(3, {});
  InDegreeMatroid m1(fixed);
  AcyclicityMatroid m2(fixed);
  GroundSet empty = make_ground({}, {});
  CHECK(max_weight_common_independent(empty, m1, m2).empty());

  GroundSet one = make_ground({{0, 1}}, {0.5});
  CHECK(max_weight_common_independent(one, m1, m2) == std::vector<int>{0});
}

namespace {

// Exhaustive axiom check over every subset of a small ground set.
void check_axioms(const GroundSet& g, const MatroidOracle& oracle) {
  const int m = static_cast<int>(g.size());
  std::vector<char> independent(1u << m, 0);
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> subset;
    for (int e = 0; e < m; ++e)
      if (mask & (1u << e)) subset.push_back(e);
    independent[mask] = oracle.is_independent(g, subset);
  }
  REQUIRE(independent[0]);  // the empty set
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (!independent[mask]) continue;
    // Hereditary: dropping any one element preserves independence.
    for (int e = 0; e < m; ++e)
      if (mask & (1u << e)) CHECK(independent[mask ^ (1u << e)]);
  }
  // Exchange: |A| < |B| independent implies some element of B extends A.
  for (unsigned a = 0; a < (1u << m); ++a) {
    if (!independent[a]) continue;
    for (unsigned b = 0; b < (1u << m); ++b) {
      if (!independent[b]) continue;
      if (__builtin_popcount(a) >= __builtin_popcount(b)) continue;
      bool extended = false;
      for (int e = 0; e < m && !extended; ++e)
        if ((b & (1u << e)) && !(a & (1u << e)) &&
            independent[a | (1u << e)])
          extended = true;
      CHECK(extended);
    }
  }
  // Circuit oracle agreement: the unique minimal dependent subset of
  // I + e, found exhaustively.
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (!independent[mask]) continue;
    std::vector<int> I;
    for (int e = 0; e < m; ++e)
      if (mask & (1u << e)) I.push_back(e);
    for (int e = 0; e < m; ++e) {
      if (mask & (1u << e)) continue;
      auto circuit = oracle.circuit(g, I, e);
      const unsigned with = mask | (1u << e);
      if (independent[with]) {
        CHECK(!circuit);
        continue;
      }
      REQUIRE(circuit.has_value());
      std::vector<unsigned> minimal;
      for (unsigned sub = 0; sub <= with; ++sub) {
        if ((sub & with) != sub || independent[sub]) continue;
        bool is_minimal = true;
        for (int x = 0; x < m && is_minimal; ++x)
          if ((sub & (1u << x)) && !independent[sub ^ (1u << x)])
            is_minimal = false;
        if (is_minimal) minimal.push_back(sub);
      }
      REQUIRE(minimal.size() == 1);
      unsigned circuit_mask = 0;
      for (int x : *circuit) circuit_mask |= 1u << x;
      CHECK(circuit_mask == minimal[0]);
      CHECK((circuit_mask & (1u << e)) != 0);
    }
  }
}

struct RandomConfig {
  FixedArcs fixed;
  GroundSet ground;
};

RandomConfig random_config(std::mt19937& rng, int max_elements) {
  const int n = 4 + static_cast<int>(rng() % 4);
  std::vector<Arc> s_arcs;
  UnionFind uf(n);
  const int tries = static_cast<int>(rng() % 5);
  for (int i = 0; i < tries; ++i) {
    int t = static_cast<int>(rng() % n);
    int h = static_cast<int>(rng() % n);
    if (t == h) continue;
    if (!uf.connected(t, h)) {
      uf.unite(t, h);
      s_arcs.push_back({t, h});
    }
  }
  GroundSet g;
  const int m = 1 + static_cast<int>(rng() % max_elements);
  for (int i = 0; i < m; ++i) {
    int t = static_cast<int>(rng() % n);
    int h = static_cast<int>(rng() % n);
    if (t == h) continue;
    const Arc arc{t, h};
    bool dup = false;
    for (const Arc& a : g.elements) dup = dup || a == arc;
    if (dup) continue;
    g.elements.push_back(arc);
    g.weights.push_back(0.05 + (rng() % 1000) / 1000.0);
  }
  return RandomConfig{FixedArcs(n, std::move(s_arcs)), std::move(g)};
}

}  // namespace

TEST_CASE("both oracles satisfy the matroid axioms on random configurations") {
  std::mt19937 rng(7011);
  for (int trial = 0; trial < 25; ++trial) {
    RandomConfig cfg = random_config(rng, 8);
    check_axioms(cfg.ground, InDegreeMatroid(cfg.fixed));
    check_axioms(cfg.ground, AcyclicityMatroid(cfg.fixed));
  }
}

TEST_CASE("engine matches exhaustive search on random configurations") {
  std::mt19937 rng(9414);
  for (int trial = 0; trial < 60; ++trial) {
    RandomConfig cfg = random_config(rng, 10);
    InDegreeMatroid m1(cfg.fixed);
    AcyclicityMatroid m2(cfg.fixed);
    std::vector<int> got =
        max_weight_common_independent(cfg.ground, m1, m2);
    CHECK(m1.is_independent(cfg.ground, got));
    CHECK(m2.is_independent(cfg.ground, got));
    for (int e : got) CHECK(cfg.ground.weights[e] > 0.0);
    std::vector<int> want =
        brute_force_common_independent(cfg.ground, m1, m2);
    CHECK(weight_of(cfg.ground, got) ==
          doctest::Approx(weight_of(cfg.ground, want)).epsilon(1e-9));
  }
}

TEST_CASE("engine is idempotent across repeated runs") {
  std::mt19937 rng(331);
  RandomConfig cfg = random_config(rng, 10);
  InDegreeMatroid m1(cfg.fixed);
  AcyclicityMatroid m2(cfg.fixed);
  auto first = max_weight_common_independent(cfg.ground, m1, m2);
  auto second = max_weight_common_independent(cfg.ground, m1, m2);
  CHECK(first == second);
}
