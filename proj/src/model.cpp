#include "polybranch/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "polybranch/errors.hpp"
#include "polybranch/union_find.hpp"

namespace polybranch {

namespace {

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

// Whitespace token reader; the grammar is line-free so this accepts any
// layout the writer or a human produces.
class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : in_(std::string(text)) {}

  std::optional<std::string> next() {
    std::string tok;
    if (in_ >> tok) return tok;
    return std::nullopt;
  }

  std::string expect(const char* what) {
    auto tok = next();
    if (!tok)
      throw ParseError(std::string("unexpected end of input, expected ") + what);
    return *tok;
  }

  long long expect_int(const char* what) {
    std::string tok = expect(what);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError(std::string("expected integer for ") + what + ", got '" +
                       tok + "'");
    return value;
  }

  double expect_real(const char* what) {
    std::string tok = expect(what);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError(std::string("expected number for ") + what + ", got '" +
                       tok + "'");
    if (!std::isfinite(value))
      throw ParseError(std::string("non-finite value for ") + what + ": '" +
                       tok + "'");
    return value;
  }

 private:
  std::istringstream in_;
};

}  // namespace

UnlistedParentSet::UnlistedParentSet(int node, std::vector<int> parents_in,
                                     const std::string& node_name)
    : std::runtime_error("no listed score for node '" + node_name + "' with " +
                         std::to_string(parents_in.size()) + " parents"),
      node(node),
      parents(std::move(parents_in)) {}

SearchSpaceTooLarge::SearchSpaceTooLarge(long long assignment_count, long long cap)
    : std::runtime_error("assignment space of " +
                         std::to_string(assignment_count) +
                         " exceeds cap of " + std::to_string(cap)),
      assignment_count(assignment_count),
      cap(cap) {}

Instance::Instance(std::vector<std::string> names,
                   std::vector<std::vector<ParentSetEntry>> tables)
    : names_(std::move(names)), tables_(std::move(tables)) {
  if (names_.size() != tables_.size())
    throw std::invalid_argument("name/table count mismatch");
  const int n = node_count();
  for (int v = 0; v < n; ++v) {
    if (names_[v].empty()) throw std::invalid_argument("empty node name");
    for (const ParentSetEntry& entry : tables_[v]) {
      if (!std::isfinite(entry.score))
        throw std::invalid_argument("non-finite score for node '" + names_[v] + "'");
      int prev = -1;
      for (int p : entry.parents) {
        if (p < 0 || p >= n)
          throw std::invalid_argument("parent index out of range");
        if (p == v)
          throw std::invalid_argument("node '" + names_[v] + "' lists itself as parent");
        if (p <= prev)
          throw std::invalid_argument("parents of node '" + names_[v] +
                                      "' not strictly increasing");
        prev = p;
      }
    }
    for (std::size_t i = 0; i < tables_[v].size(); ++i)
      for (std::size_t j = i + 1; j < tables_[v].size(); ++j)
        if (tables_[v][i].parents == tables_[v][j].parents)
          throw std::invalid_argument("duplicate parent set for node '" + names_[v] + "'");
  }
}

std::optional<double> Instance::local_score(int v,
                                            const std::vector<int>& parents) const {
  for (const ParentSetEntry& entry : tables_[v])
    if (entry.parents == parents) return entry.score;
  if (parents.empty()) return 0.0;
  return std::nullopt;
}

double Instance::empty_set_score(int v) const {
  return *local_score(v, {});
}

Instance Instance::normalized() const {
  std::vector<std::vector<ParentSetEntry>> tables = tables_;
  for (int v = 0; v < node_count(); ++v) {
    bool has_empty = false;
    for (const ParentSetEntry& entry : tables[v])
      if (entry.parents.empty()) has_empty = true;
    if (!has_empty) tables[v].push_back(ParentSetEntry{{}, 0.0});
    std::sort(tables[v].begin(), tables[v].end(),
              [](const ParentSetEntry& a, const ParentSetEntry& b) {
                return a.parents < b.parents;
              });
  }
  return Instance(names_, std::move(tables));
}

ArcSet::ArcSet(int node_count, std::vector<Arc> arcs)
    : node_count_(node_count), arcs_(std::move(arcs)) {
  if (node_count_ < 0) throw std::invalid_argument("negative node count");
  for (const Arc& a : arcs_) {
    if (a.tail < 0 || a.tail >= node_count_ || a.head < 0 || a.head >= node_count_)
      throw std::invalid_argument("arc endpoint out of range");
    if (a.tail == a.head) throw std::invalid_argument("self-loop arc");
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
}

bool ArcSet::contains(const Arc& a) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), a);
}

std::vector<std::vector<int>> ArcSet::parent_sets() const {
  std::vector<std::vector<int>> parents(node_count_);
  for (const Arc& a : arcs_) parents[a.head].push_back(a.tail);
  for (auto& p : parents) std::sort(p.begin(), p.end());
  return parents;
}

std::vector<int> ArcSet::in_degrees() const {
  std::vector<int> deg(node_count_, 0);
  for (const Arc& a : arcs_) ++deg[a.head];
  return deg;
}

std::vector<int> ArcSet::heads() const {
  std::vector<int> deg = in_degrees();
  std::vector<int> out;
  for (int v = 0; v < node_count_; ++v)
    if (deg[v] > 0) out.push_back(v);
  return out;
}

Instance parse_scores(std::string_view text, std::vector<std::string>* warnings) {
  TokenStream ts(text);
  const long long var_count = ts.expect_int("node count");
  if (var_count < 0) throw ParseError("negative node count");

  struct RawEntry {
    double score;
    std::vector<std::string> parents;
  };
  std::vector<std::string> names(var_count);
  std::vector<std::vector<RawEntry>> raw(var_count);
  for (long long v = 0; v < var_count; ++v) {
    names[v] = ts.expect("node name");
    const long long set_count = ts.expect_int("parent set count");
    if (set_count < 0)
      throw ParseError("negative parent set count for node '" + names[v] + "'");
    raw[v].reserve(static_cast<std::size_t>(set_count));
    for (long long s = 0; s < set_count; ++s) {
      RawEntry entry;
      entry.score = ts.expect_real("score");
      const long long parent_count = ts.expect_int("parent count");
      if (parent_count < 0)
        throw ParseError("negative parent count for node '" + names[v] + "'");
      entry.parents.resize(static_cast<std::size_t>(parent_count));
      for (auto& p : entry.parents) p = ts.expect("parent name");
      raw[v].push_back(std::move(entry));
    }
  }
  if (auto extra = ts.next())
    throw ParseError("trailing content after last parent set: '" + *extra + "'");

  std::unordered_map<std::string, int> index_of;
  for (int v = 0; v < var_count; ++v)
    if (!index_of.emplace(names[v], v).second)
      throw ParseError("duplicate node name '" + names[v] + "'");

  std::vector<std::vector<ParentSetEntry>> tables(var_count);
  for (int v = 0; v < var_count; ++v) {
    for (RawEntry& rawEntry : raw[v]) {
      ParentSetEntry entry;
      entry.score = rawEntry.score;
      entry.parents.reserve(rawEntry.parents.size());
      for (const std::string& pname : rawEntry.parents) {
        auto it = index_of.find(pname);
        if (it == index_of.end())
          throw ParseError("unknown parent name '" + pname + "' for node '" +
                           names[v] + "'");
        if (it->second == v)
          throw ParseError("node '" + names[v] + "' lists itself as parent");
        entry.parents.push_back(it->second);
      }
      std::sort(entry.parents.begin(), entry.parents.end());
      if (std::adjacent_find(entry.parents.begin(), entry.parents.end()) !=
          entry.parents.end())
        throw ParseError("repeated parent in a set of node '" + names[v] + "'");

      auto existing = std::find_if(
          tables[v].begin(), tables[v].end(),
          [&](const ParentSetEntry& e) { return e.parents == entry.parents; });
      if (existing != tables[v].end()) {
        existing->score = std::max(existing->score, entry.score);
        if (warnings)
          warnings->push_back("duplicate parent set for node '" + names[v] +
                              "', keeping the maximum score");
      } else {
        tables[v].push_back(std::move(entry));
      }
    }
  }
  return Instance(std::move(names), std::move(tables));
}

std::string write_scores(const Instance& instance) {
  std::string out = std::to_string(instance.node_count());
  out += '\n';
  for (int v = 0; v < instance.node_count(); ++v) {
    out += instance.name(v);
    out += ' ';
    out += std::to_string(instance.table(v).size());
    out += '\n';
    for (const ParentSetEntry& entry : instance.table(v)) {
      out += format_real(entry.score);
      out += ' ';
      out += std::to_string(entry.parents.size());
      for (int p : entry.parents) {
        out += ' ';
        out += instance.name(p);
      }
      out += '\n';
    }
  }
  return out;
}

double evaluate_score(const Instance& instance, const ArcSet& arcs) {
  if (instance.node_count() != arcs.node_count())
    throw std::invalid_argument("node count mismatch");
  const std::vector<std::vector<int>> parents = arcs.parent_sets();
  double total = 0.0;
  for (int v = 0; v < instance.node_count(); ++v) {
    std::optional<double> s = instance.local_score(v, parents[v]);
    if (!s) throw UnlistedParentSet(v, parents[v], instance.name(v));
    total += *s;
  }
  return total;
}

bool skeleton_is_acyclic(const ArcSet& arcs) {
  UnionFind uf(arcs.node_count());
  for (const Arc& a : arcs.arcs())
    if (!uf.unite(a.tail, a.head)) return false;
  return true;
}

int min_deletion_size(const ArcSet& arcs) {
  int total = 0;
  for (int d : arcs.in_degrees())
    if (d > 1) total += d - 1;
  return total;
}

bool is_k_branching(const ArcSet& arcs, int k) {
  return skeleton_is_acyclic(arcs) && min_deletion_size(arcs) <= k;
}

std::vector<Arc> canonical_deletion_set(const ArcSet& arcs) {
  if (!skeleton_is_acyclic(arcs))
    throw NotAPolytree("deletion set undefined: skeleton has a cycle");
  std::vector<std::vector<int>> parents = arcs.parent_sets();
  std::vector<Arc> out;
  for (int v = 0; v < arcs.node_count(); ++v) {
    // Tails are sorted ascending; every incoming arc beyond the first
    // (smallest tail) is deleted.
    for (std::size_t i = 1; i < parents[v].size(); ++i)
      out.push_back(Arc{parents[v][i], v});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace polybranch
