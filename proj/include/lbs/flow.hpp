#pragma once

#include <optional>
#include <vector>

#include "lbs/graph.hpp"

namespace lbs {

// True iff all clients in X can be assigned to adjacent servers with at most
// d clients per server. Realized as a unit-capacity b-matching feasibility
// check (Dinic). d must be >= 1.
bool feasible_load(const BipartiteGraph& g, const std::vector<int>& x, int d);

// An assignment of X with MAXLOAD <= d extracted from the same flow, or
// nullopt if none exists.
std::optional<Assignment> assignment_with_load(const BipartiteGraph& g,
                                               const std::vector<int>& x,
                                               int d);

}  // namespace lbs
