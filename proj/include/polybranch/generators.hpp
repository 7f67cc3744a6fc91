#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polybranch/model.hpp"

namespace polybranch {

// CNF with 1-based variable indices; a literal is +v or -v.
struct CnfFormula {
  int variable_count = 0;
  std::vector<std::vector<int>> clauses;
};

struct ReductionMeta {
  int k = 0;
  double threshold = 0.0;
  std::vector<std::string> node_names;
};

// DIMACS CNF subset: optional comment lines, a "p cnf <vars> <clauses>"
// header, then whitespace-separated literals with 0 terminating each
// clause. Throws ParseError on malformed input.
CnfFormula parse_dimacs(std::string_view text);

// Restrictions: every clause has 1 to 3 distinct literals, and every
// signed literal occurs in at most two clauses. Throws NotThreeSatTwo.
void validate_3sat2(const CnfFormula& phi);

// Hardness-reduction instance for a 3-SAT-2 formula over n variables
// and m clauses: 6n + 2m nodes; the formula is satisfiable exactly
// when the optimal (2n+m)-branching scores at least 2(m+n).
//
// Per variable i: a chain node p_i, the variable node x_i, and four
// occurrence nodes x_i^1, x_i^2 (positive) and nx_i^1, nx_i^2
// (negated). Per clause j: a clause node C_j and a chain node p_{n+j}.
// x_i scores 1 with either occurrence pair as parents; p_i scores 1
// with {x_i, p_{i-1}} ({x_1} for p_1); p_{n+j} scores 1 with
// {C_j, p_{n+j-1}}; C_j scores 1 with the occurrence node of any of
// its literals, where occurrence ranks follow clause order. All other
// sets are unlisted.
std::pair<Instance, ReductionMeta> sat_to_instance(const CnfFormula& phi);

// Seeded random instance: per node `sets_per_node` distinct non-empty
// parent sets with sizes in [1, max_set_size], scores uniform in [0,1]
// rounded to 6 decimals. Bit-reproducible across platforms for a given
// seed. Node names are v1..vn.
Instance random_instance(int n, int max_set_size, int sets_per_node,
                         std::uint64_t seed);

}  // namespace polybranch
