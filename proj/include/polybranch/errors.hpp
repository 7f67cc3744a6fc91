#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace polybranch {

// Malformed score file, network JSON, or DIMACS input.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A node's induced parent set is neither listed nor empty.
struct UnlistedParentSet : std::runtime_error {
  int node;
  std::vector<int> parents;
  UnlistedParentSet(int node, std::vector<int> parents, const std::string& node_name);
};

// An operation requiring an acyclic skeleton was given a cyclic one.
struct NotAPolytree : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The brute-force assignment space exceeds the configured cap.
struct SearchSpaceTooLarge : std::runtime_error {
  long long assignment_count;
  long long cap;
  SearchSpaceTooLarge(long long assignment_count, long long cap);
};

// CNF input violates the 3-SAT-2 restrictions.
struct NotThreeSatTwo : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace polybranch
