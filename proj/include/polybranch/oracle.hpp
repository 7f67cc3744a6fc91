#pragma once

#include <vector>

#include "polybranch/matroid.hpp"
#include "polybranch/solver.hpp"

namespace polybranch {

inline constexpr long long kDefaultAssignmentCap = 10'000'000;

// Ground truth by exhaustion: walks every per-node choice among the
// listed parent sets plus the implicit empty set, keeps the assignments
// forming a k-branching, and returns the best under the shared
// tie-break. Throws SearchSpaceTooLarge when the product of choice
// counts exceeds `cap`.
Solution brute_force_optimum(const Instance& instance, int k,
                             long long cap = kDefaultAssignmentCap);

// Exhaustive subset search over ground sets of at most 20 elements;
// maximum weight, ties to the lexicographically smallest index list.
std::vector<int> brute_force_common_independent(const GroundSet& ground,
                                                const MatroidOracle& m1,
                                                const MatroidOracle& m2);

}  // namespace polybranch
