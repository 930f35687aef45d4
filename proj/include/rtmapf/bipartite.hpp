#pragma once

#include <vector>

namespace rtmapf {

// Maximum cardinality bipartite matching (Hopcroft-Karp). adjacency[l] lists the
// right vertices of left vertex l; the scan order of each list decides ties, so
// results are deterministic for a fixed adjacency.
//
// Returns match_of_left: right vertex matched to each left vertex, or -1.
std::vector<int> maximum_matching(int right_count, const std::vector<std::vector<int>>& adjacency);

// Number of matched left vertices in a match_of_left vector.
int matching_size(const std::vector<int>& match_of_left);

}  // namespace rtmapf
