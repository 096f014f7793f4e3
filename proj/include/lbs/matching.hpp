#pragma once

#include <vector>

#include "lbs/graph.hpp"

namespace lbs {

// Maximum-cardinality matching of the subgraph induced by the client set X
// and all servers (Hopcroft-Karp).
Matching max_matching(const BipartiteGraph& g, const std::vector<int>& x);
Matching max_matching(const BipartiteGraph& g);

// |max_matching(g, x)| == |x|.
bool is_matchable(const BipartiteGraph& g, const std::vector<int>& x);

int maximum_matching_size(const BipartiteGraph& g);

// The matching saturating X whose server sequence, read in ascending client
// order, is lexicographically smallest among all matchings saturating X.
// Throws InputError if X is not matchable. Used to fix matchings in advance,
// independent of any randomness.
Matching lexmin_saturating_matching(const BipartiteGraph& g,
                                    const std::vector<int>& x);

}  // namespace lbs
