#include "polybranch/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "polybranch/errors.hpp"

namespace polybranch {

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  CnfFormula phi;
  long long clause_count = -1;
  std::vector<int> clause;
  bool header_seen = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "p") {
      if (header_seen) throw ParseError("duplicate DIMACS header");
      std::string fmt;
      long long vars = -1;
      if (!(ls >> fmt >> vars >> clause_count) || fmt != "cnf" || vars < 0 ||
          clause_count < 0)
        throw ParseError("malformed DIMACS header");
      phi.variable_count = static_cast<int>(vars);
      header_seen = true;
      continue;
    }
    if (!header_seen) throw ParseError("clause before DIMACS header");
    ls.clear();
    ls.seekg(0);
    long long lit;
    while (ls >> lit) {
      if (lit == 0) {
        phi.clauses.push_back(clause);
        clause.clear();
        continue;
      }
      const long long var = lit < 0 ? -lit : lit;
      if (var > phi.variable_count)
        throw ParseError("literal out of range: " + std::to_string(lit));
      clause.push_back(static_cast<int>(lit));
    }
    if (!ls.eof()) throw ParseError("non-integer token in clause data");
  }
  if (!header_seen) throw ParseError("missing DIMACS header");
  if (!clause.empty()) throw ParseError("unterminated clause");
  if (static_cast<long long>(phi.clauses.size()) != clause_count)
    throw ParseError("clause count does not match header");
  return phi;
}

void validate_3sat2(const CnfFormula& phi) {
  std::map<int, int> occurrences;
  for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
    const auto& clause = phi.clauses[j];
    if (clause.empty() || clause.size() > 3)
      throw NotThreeSatTwo("clause " + std::to_string(j + 1) +
                           " must have 1 to 3 literals");
    for (std::size_t a = 0; a < clause.size(); ++a)
      for (std::size_t b = a + 1; b < clause.size(); ++b)
        if (clause[a] == clause[b])
          throw NotThreeSatTwo("repeated literal in clause " +
                               std::to_string(j + 1));
    for (int lit : clause)
      if (++occurrences[lit] > 2)
        throw NotThreeSatTwo("literal " + std::to_string(lit) +
                             " occurs in more than two clauses");
  }
}

std::pair<Instance, ReductionMeta> sat_to_instance(const CnfFormula& phi) {
  validate_3sat2(phi);
  const int n = phi.variable_count;
  const int m = static_cast<int>(phi.clauses.size());

  // Layout: per variable i (0-based) the block
  //   p_i, x_i, x_i^1, x_i^2, nx_i^1, nx_i^2
  // at 6i, then per clause j the pair C_j, p_{n+j} at 6n + 2j.
  const auto p_node = [&](int i) {
    return i < n ? 6 * i : 6 * n + 2 * (i - n) + 1;  // i is 0-based
  };
  const auto x_node = [&](int i) { return 6 * i + 1; };
  const auto occ_node = [&](int lit, int rank) {
    const int i = std::abs(lit) - 1;
    return 6 * i + (lit > 0 ? 2 : 4) + rank;  // rank 0 or 1
  };
  const auto clause_node = [&](int j) { return 6 * n + 2 * j; };

  std::vector<std::string> names(6 * n + 2 * m);
  for (int i = 0; i < n; ++i) {
    const std::string v = std::to_string(i + 1);
    names[6 * i + 0] = "p" + v;
    names[6 * i + 1] = "x" + v;
    names[6 * i + 2] = "x" + v + "_1";
    names[6 * i + 3] = "x" + v + "_2";
    names[6 * i + 4] = "nx" + v + "_1";
    names[6 * i + 5] = "nx" + v + "_2";
  }
  for (int j = 0; j < m; ++j) {
    names[clause_node(j)] = "C" + std::to_string(j + 1);
    names[clause_node(j) + 1] = "p" + std::to_string(n + j + 1);
  }

  std::vector<std::vector<ParentSetEntry>> tables(names.size());
  const auto add = [&](int node, std::vector<int> parents) {
    std::sort(parents.begin(), parents.end());
    tables[node].push_back(ParentSetEntry{std::move(parents), 1.0});
  };

  for (int i = 0; i < n; ++i) {
    add(x_node(i), {occ_node(i + 1, 0), occ_node(i + 1, 1)});
    add(x_node(i), {occ_node(-(i + 1), 0), occ_node(-(i + 1), 1)});
    if (i == 0)
      add(p_node(0), {x_node(0)});
    else
      add(p_node(i), {x_node(i), p_node(i - 1)});
  }
  std::map<int, int> seen;  // occurrences of each literal so far
  for (int j = 0; j < m; ++j) {
    for (int lit : phi.clauses[j]) {
      const int rank = seen[lit]++;
      add(clause_node(j), {occ_node(lit, rank)});
    }
    add(p_node(n + j), {clause_node(j), p_node(n + j - 1)});
  }

  ReductionMeta meta;
  meta.k = 2 * n + m;
  meta.threshold = 2.0 * (m + n);
  meta.node_names = names;
  return {Instance(std::move(names), std::move(tables)), std::move(meta)};
}

namespace {

// 53-bit uniform draw in [0, 1); mt19937_64 output is pinned by the
// standard, so instances are reproducible everywhere.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

long long subset_capacity(int pool, int max_size, long long limit) {
  long long total = 0;
  long long binom = 1;
  for (int s = 1; s <= max_size; ++s) {
    binom = binom * (pool - s + 1) / s;
    total += binom;
    if (total >= limit) return limit;
  }
  return total;
}

}  // namespace

Instance random_instance(int n, int max_set_size, int sets_per_node,
                         std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one node");
  if (max_set_size < 0 || max_set_size > n - 1)
    throw std::invalid_argument("max_set_size must be in [0, n-1]");
  if (sets_per_node < 0) throw std::invalid_argument("negative sets_per_node");
  if (sets_per_node > 0 && max_set_size == 0)
    throw std::invalid_argument("sets_per_node > 0 requires max_set_size >= 1");
  if (subset_capacity(n - 1, max_set_size, sets_per_node + 1LL) <
      sets_per_node)
    throw std::invalid_argument("fewer distinct parent sets than requested");

  std::mt19937_64 rng(seed);
  std::vector<std::string> names(n);
  for (int v = 0; v < n; ++v) names[v] = "v" + std::to_string(v + 1);

  std::vector<std::vector<ParentSetEntry>> tables(n);
  std::vector<int> pool;
  for (int v = 0; v < n; ++v) {
    pool.clear();
    for (int u = 0; u < n; ++u)
      if (u != v) pool.push_back(u);
    while (static_cast<int>(tables[v].size()) < sets_per_node) {
      const int size =
          1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_set_size));
      std::vector<int> parents;
      for (int i = 0; i < size; ++i) {
        const int j =
            i + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                     pool.size() - static_cast<std::size_t>(i)));
        std::swap(pool[i], pool[j]);
        parents.push_back(pool[i]);
      }
      std::sort(parents.begin(), parents.end());
      bool duplicate = false;
      for (const ParentSetEntry& entry : tables[v])
        if (entry.parents == parents) {
          duplicate = true;
          break;
        }
      if (duplicate) continue;
      const double score = std::round(uniform01(rng) * 1e6) / 1e6;
      tables[v].push_back(ParentSetEntry{std::move(parents), score});
    }
  }
  return Instance(std::move(names), std::move(tables));
}

}  // namespace polybranch
