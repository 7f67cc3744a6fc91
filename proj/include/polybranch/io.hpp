#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polybranch/model.hpp"

namespace polybranch {

// Single-line network JSON:
//   {"arcs":[[t,h],...],"score":s,"deletion_set":[[t,h],...]}
// Arc pairs are 0-based node indices sorted by (tail, head); the score
// prints with 9 decimal places. Byte-stable for equal inputs.
std::string network_json(const ArcSet& arcs, double score,
                         const std::vector<Arc>& deletion_set);

// Reads the "arcs" member of a network JSON object; other members are
// ignored. Throws ParseError on malformed JSON, non-pair entries,
// out-of-range endpoints, or self-loops.
ArcSet network_arcs_from_json(int node_count, std::string_view text);

// GraphViz rendering with node names as labels.
std::string to_dot(const Instance& instance, const ArcSet& arcs);

}  // namespace polybranch
