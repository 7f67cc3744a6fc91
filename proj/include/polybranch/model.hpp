#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polybranch {

// Directed arc tail -> head between node indices. Ordering is
// lexicographic on (tail, head); it fixes every serialization order.
struct Arc {
  int tail = 0;
  int head = 0;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// One scored candidate parent set. Parents are strictly increasing node
// indices and never include the owning node.
struct ParentSetEntry {
  std::vector<int> parents;
  double score = 0.0;
  friend bool operator==(const ParentSetEntry&, const ParentSetEntry&) = default;
};

// A problem instance: named nodes, each with a table of scored parent
// sets. A node whose table has no empty-set entry implicitly scores the
// empty set at 0.0; every non-empty parent set must be listed to be
// usable. All scores are finite.
class Instance {
 public:
  Instance(std::vector<std::string> names,
           std::vector<std::vector<ParentSetEntry>> tables);

  int node_count() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<ParentSetEntry>& table(int v) const { return tables_[v]; }

  // Score of `parents` at node v: the listed value, 0.0 for an unlisted
  // empty set, nullopt for an unlisted non-empty set. `parents` must be
  // sorted ascending.
  std::optional<double> local_score(int v, const std::vector<int>& parents) const;

  double empty_set_score(int v) const;

  // Copy with every table normalized: an explicit empty-set entry and
  // entries sorted by parent list. Two instances that denote the same
  // score function normalize to equal instances.
  Instance normalized() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<ParentSetEntry>> tables_;
};

// A set of arcs over a fixed node universe, stored sorted by
// (tail, head) without duplicates. Value type; equality is structural.
class ArcSet {
 public:
  ArcSet() = default;
  ArcSet(int node_count, std::vector<Arc> arcs);

  int node_count() const { return node_count_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }
  bool contains(const Arc& a) const;

  // Parent list of every node, each sorted ascending.
  std::vector<std::vector<int>> parent_sets() const;
  std::vector<int> in_degrees() const;
  // Nodes with in-degree >= 1, ascending.
  std::vector<int> heads() const;

  friend bool operator==(const ArcSet&, const ArcSet&) = default;

 private:
  int node_count_ = 0;
  std::vector<Arc> arcs_;
};

// Parses the whitespace-separated score table format:
//   <node count>
//   <name> <set count>
//   <score> <parent count> <parent name>...   (set count times, per node)
// Duplicate parent sets for one node collapse to the maximum score; a
// note is appended to `warnings` when that happens.
Instance parse_scores(std::string_view text,
                      std::vector<std::string>* warnings = nullptr);

// Inverse of parse_scores up to normalization. Scores print with
// shortest round-trip precision.
std::string write_scores(const Instance& instance);

// Sum of local scores of the parent sets `arcs` induces, accumulated in
// ascending node order. Throws UnlistedParentSet when some node's
// non-empty parent set is not in its table.
double evaluate_score(const Instance& instance, const ArcSet& arcs);

// True when the undirected skeleton has no cycle; parallel arcs count
// as a cycle of length two.
bool skeleton_is_acyclic(const ArcSet& arcs);

// Number of arcs that must be deleted to reach in-degree <= 1
// everywhere: sum over nodes of max(0, indeg - 1).
int min_deletion_size(const ArcSet& arcs);

// A k-branching is a polytree whose minimum deletion size is at most k.
bool is_k_branching(const ArcSet& arcs, int k);

// For each node of in-degree d >= 2 the d - 1 lexicographically largest
// incoming arcs, merged and sorted. Throws NotAPolytree when the
// skeleton is cyclic.
std::vector<Arc> canonical_deletion_set(const ArcSet& arcs);

}  // namespace polybranch
