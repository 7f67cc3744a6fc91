#pragma once

#include <vector>

#include "polybranch/model.hpp"

namespace polybranch {

struct WeightedArc {
  Arc arc;
  double weight = 0.0;
  friend bool operator==(const WeightedArc&, const WeightedArc&) = default;
};

// Maximum-weight branching (in-degree <= 1, no directed cycle) by the
// classic contraction scheme. Only positive-weight arcs can appear in
// the result; `arcs` must not contain duplicates. Deterministic.
//
// For in-degree <= 1 arc sets directed acyclicity coincides with
// skeleton acyclicity: any skeleton cycle visits each node via two
// distinct incident arcs, and with at most one incoming arc per node
// exactly one of the two points in, so the cycle is directed. The
// result is therefore also a polytree (asserted in tests).
ArcSet max_weight_branching(int node_count, const std::vector<WeightedArc>& arcs);

}  // namespace polybranch
