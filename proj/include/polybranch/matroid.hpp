#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polybranch/model.hpp"

namespace polybranch {

// Ground set of candidate arcs for the intersection engine. Elements
// are addressed by index. Callers that need reproducible output supply
// elements sorted ascending by (head, tail); the engine itself breaks
// every tie by element index.
struct GroundSet {
  std::vector<Arc> elements;
  std::vector<double> weights;
  std::size_t size() const { return elements.size(); }
};

// The fixed arc set S both matroids are parametrized by. Requires an
// acyclic skeleton; precomputes the head set H(S) and the connected
// components of the skeleton.
class FixedArcs {
 public:
  // Throws NotAPolytree when the skeleton of `arcs` has a cycle.
  explicit FixedArcs(const ArcSet& arcs);
  FixedArcs(int node_count, std::vector<Arc> arcs);

  int node_count() const { return arcs_.node_count(); }
  const ArcSet& arcs() const { return arcs_; }
  bool is_head(int v) const { return is_head_[v] != 0; }
  const std::vector<int>& heads() const { return heads_; }
  // Dense component id of v in the skeleton of S; ids are numbered by
  // smallest member node.
  int component(int v) const { return component_[v]; }

 private:
  ArcSet arcs_;
  std::vector<char> is_head_;
  std::vector<int> heads_;
  std::vector<int> component_;
};

// Independence oracle with unique-circuit extraction. circuit() demands
// an independent I and returns the one circuit of I + e (sorted element
// indices, always containing e), or nullopt when I + e stays
// independent.
class MatroidOracle {
 public:
  virtual ~MatroidOracle() = default;
  virtual bool is_independent(const GroundSet& ground,
                              std::span<const int> subset) const = 0;
  virtual std::optional<std::vector<int>> circuit(const GroundSet& ground,
                                                  std::span<const int> independent,
                                                  int e) const = 0;
};

// In-degree matroid: a subset is independent when no element's head
// lies in H(S) and no two elements share a head. Circuits are the
// single-element loops (head in H(S)) and same-head pairs.
class InDegreeMatroid final : public MatroidOracle {
 public:
  explicit InDegreeMatroid(const FixedArcs& fixed) : fixed_(&fixed) {}
  bool is_independent(const GroundSet& ground,
                      std::span<const int> subset) const override;
  std::optional<std::vector<int>> circuit(const GroundSet& ground,
                                          std::span<const int> independent,
                                          int e) const override;

 private:
  const FixedArcs* fixed_;
};

// Acyclicity matroid: the graphic matroid of the arc skeletons after
// contracting every component of S's skeleton. A subset is independent
// when its edges form a forest over the contracted vertices.
class AcyclicityMatroid final : public MatroidOracle {
 public:
  explicit AcyclicityMatroid(const FixedArcs& fixed) : fixed_(&fixed) {}
  bool is_independent(const GroundSet& ground,
                      std::span<const int> subset) const override;
  std::optional<std::vector<int>> circuit(const GroundSet& ground,
                                          std::span<const int> independent,
                                          int e) const override;

 private:
  const FixedArcs* fixed_;
};

// Maximum-weight set independent in both matroids, found by shortest
// augmenting paths in the exchange graph. Augmentation keeps the
// current set extreme among its cardinality, so stopping at the first
// non-positive gain is exact. Deterministic for a fixed ground set.
// Returns sorted element indices.
std::vector<int> max_weight_common_independent(const GroundSet& ground,
                                               const MatroidOracle& m1,
                                               const MatroidOracle& m2);

}  // namespace polybranch
