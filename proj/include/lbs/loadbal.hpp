#pragma once

#include <optional>
#include <vector>

#include "lbs/graph.hpp"

namespace lbs {

// Minimum achievable MAXLOAD over assignments of X, by binary search over
// the flow feasibility check. Returns nullopt when some client of X has no
// neighbor (infeasible is a value, not an error); 0 for empty X.
std::optional<int> optload(const BipartiteGraph& g, const std::vector<int>& x);

// Independent oracle: max over nonempty U subseteq X of ceil(|U|/|N(U)|).
// Exponential in |X|; capped at |X| <= 20.
std::optional<int> optload_hall(const BipartiteGraph& g,
                                const std::vector<int>& x);

// A witness assignment achieving optload(g, x). Throws InputError when a
// client of X is isolated.
Assignment optimal_assignment(const BipartiteGraph& g,
                              const std::vector<int>& x);

int load_of(const Assignment& a, int server);
int max_load(const Assignment& a);

}  // namespace lbs
