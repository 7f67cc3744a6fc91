#include "polybranch/matroid.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include "polybranch/errors.hpp"
#include "polybranch/union_find.hpp"

namespace polybranch {

FixedArcs::FixedArcs(const ArcSet& arcs) : arcs_(arcs) {
  if (!skeleton_is_acyclic(arcs_))
    throw NotAPolytree("fixed arc set has a cyclic skeleton");
  const int n = arcs_.node_count();
  is_head_.assign(n, 0);
  for (const Arc& a : arcs_.arcs()) is_head_[a.head] = 1;
  heads_ = arcs_.heads();

  UnionFind uf(n);
  for (const Arc& a : arcs_.arcs()) uf.unite(a.tail, a.head);
  component_.assign(n, -1);
  int next_id = 0;
  for (int v = 0; v < n; ++v) {
    int root = uf.find(v);
    if (component_[root] < 0) component_[root] = next_id++;
    component_[v] = component_[root];
  }
}

FixedArcs::FixedArcs(int node_count, std::vector<Arc> arcs)
    : FixedArcs(ArcSet(node_count, std::move(arcs))) {}

bool InDegreeMatroid::is_independent(const GroundSet& ground,
                                     std::span<const int> subset) const {
  std::vector<char> seen(fixed_->node_count(), 0);
  for (int e : subset) {
    const int head = ground.elements[e].head;
    if (fixed_->is_head(head)) return false;
    if (seen[head]) return false;
    seen[head] = 1;
  }
  return true;
}

std::optional<std::vector<int>> InDegreeMatroid::circuit(
    const GroundSet& ground, std::span<const int> independent, int e) const {
  const int head = ground.elements[e].head;
  if (fixed_->is_head(head)) return std::vector<int>{e};
  for (int i : independent)
    if (ground.elements[i].head == head) {
      std::vector<int> c{i, e};
      std::sort(c.begin(), c.end());
      return c;
    }
  return std::nullopt;
}

bool AcyclicityMatroid::is_independent(const GroundSet& ground,
                                       std::span<const int> subset) const {
  UnionFind uf(fixed_->node_count());
  for (int e : subset) {
    const Arc& a = ground.elements[e];
    if (!uf.unite(fixed_->component(a.tail), fixed_->component(a.head)))
      return false;
  }
  return true;
}

std::optional<std::vector<int>> AcyclicityMatroid::circuit(
    const GroundSet& ground, std::span<const int> independent, int e) const {
  const int from = fixed_->component(ground.elements[e].tail);
  const int to = fixed_->component(ground.elements[e].head);
  if (from == to) return std::vector<int>{e};

  // The elements of `independent` form a forest over contracted
  // vertices; the circuit is the unique from-to path plus e.
  struct Half {
    int neighbor;
    int element;
  };
  std::vector<std::vector<Half>> adj(fixed_->node_count());
  for (int i : independent) {
    const Arc& a = ground.elements[i];
    const int u = fixed_->component(a.tail);
    const int v = fixed_->component(a.head);
    adj[u].push_back({v, i});
    adj[v].push_back({u, i});
  }
  std::vector<int> via_element(fixed_->node_count(), -1);
  std::vector<int> prev(fixed_->node_count(), -1);
  std::vector<char> visited(fixed_->node_count(), 0);
  std::queue<int> queue;
  queue.push(from);
  visited[from] = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop();
    if (u == to) break;
    for (const Half& h : adj[u]) {
      if (visited[h.neighbor]) continue;
      visited[h.neighbor] = 1;
      prev[h.neighbor] = u;
      via_element[h.neighbor] = h.element;
      queue.push(h.neighbor);
    }
  }
  if (!visited[to]) return std::nullopt;
  std::vector<int> circuit{e};
  for (int u = to; u != from; u = prev[u]) circuit.push_back(via_element[u]);
  std::sort(circuit.begin(), circuit.end());
  return circuit;
}

namespace {

struct Label {
  double dist = 0.0;
  int hops = 0;
  int pred = -1;  // -1 marks a path starting at the virtual source
  bool reached = false;
};

bool improves(double dist, int hops, const Label& label) {
  if (!label.reached) return true;
  if (dist != label.dist) return dist < label.dist;
  return hops < label.hops;
}

}  // namespace

std::vector<int> max_weight_common_independent(const GroundSet& ground,
                                               const MatroidOracle& m1,
                                               const MatroidOracle& m2) {
  const int m = static_cast<int>(ground.size());
  std::vector<char> in_set(m, 0);
  std::vector<int> current;

  for (;;) {
    // Exchange graph for the current set I: for z outside I an arc
    // y -> z exists when I - y + z stays independent in the first
    // matroid, and z -> y when it stays independent in the second.
    // Sources are the z with I + z independent in the first matroid,
    // sinks likewise for the second; both follow from the circuits.
    struct Edge {
      int from, to;
      double len;
    };
    std::vector<Edge> edges;
    std::vector<Label> labels(m);
    std::vector<char> is_sink(m, 0);
    for (int z = 0; z < m; ++z) {
      if (in_set[z]) continue;
      const double enter_len = -ground.weights[z];
      auto c1 = m1.circuit(ground, current, z);
      if (!c1) {
        labels[z] = Label{enter_len, 1, -1, true};
        for (int y : current) edges.push_back({y, z, enter_len});
      } else {
        for (int y : *c1)
          if (y != z) edges.push_back({y, z, enter_len});
      }
      auto c2 = m2.circuit(ground, current, z);
      if (!c2) {
        is_sink[z] = 1;
        for (int y : current) edges.push_back({z, y, ground.weights[y]});
      } else {
        for (int y : *c2)
          if (y != z) edges.push_back({z, y, ground.weights[y]});
      }
    }

    // Bellman-Ford on (length, hop count); the exchange graph of an
    // extreme set has no negative cycle, so |V| passes suffice.
    bool changed = true;
    for (int pass = 0; pass <= m && changed; ++pass) {
      changed = false;
      for (const Edge& edge : edges) {
        const Label& from = labels[edge.from];
        if (!from.reached) continue;
        const double dist = from.dist + edge.len;
        const int hops = from.hops + 1;
        if (improves(dist, hops, labels[edge.to])) {
          labels[edge.to] = Label{dist, hops, edge.from, true};
          changed = true;
        }
      }
    }
    if (changed)
      throw std::logic_error("negative cycle in exchange graph");

    int sink = -1;
    for (int z = 0; z < m; ++z) {
      if (!is_sink[z] || !labels[z].reached) continue;
      if (sink < 0 || improves(labels[z].dist, labels[z].hops, labels[sink]))
        sink = z;
    }
    // No augmenting path, or the best one no longer gains weight.
    if (sink < 0 || labels[sink].dist >= 0.0) break;

    for (int v = sink; v >= 0; v = labels[v].pred) in_set[v] ^= 1;
    current.clear();
    for (int e = 0; e < m; ++e)
      if (in_set[e]) current.push_back(e);
    if (!m1.is_independent(ground, current) ||
        !m2.is_independent(ground, current))
      throw std::logic_error("augmentation left the common set dependent");
  }
  return current;
}

}  // namespace polybranch
