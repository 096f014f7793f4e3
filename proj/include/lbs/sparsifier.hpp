#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lbs/contractor.hpp"
#include "lbs/graph.hpp"
#include "lbs/rational.hpp"

namespace lbs {

struct SparsifierReport {
  bool passes = false;
  // False when some tested witness is infeasible on the H side while
  // feasible in G (ratio unbounded); worst_ratio is meaningful otherwise.
  bool ratio_bounded = true;
  Rat worst_ratio = 0;
  std::optional<std::vector<int>> witness_clients;
  std::optional<std::vector<int>> witness_servers;
};

// Definition-level check: OPTLOAD(H[C u R]) <= alpha * OPTLOAD(G[C u R]) for
// every client subset C, evaluated with the flow-based load oracle.
// Exhaustive over 2^n_left subsets; capped at n_left <= 16. Subsets with
// both sides 0 or both sides infeasible contribute ratio 1.
SparsifierReport is_sparsifier_def(const BipartiteGraph& g,
                                   const BipartiteGraph& h, const Rat& alpha);

// Operational check: every X matchable in G keeps |N_H(X)| >= |X|/alpha.
// Capped at n_left <= 20.
SparsifierReport is_sparsifier_operational(const BipartiteGraph& g,
                                           const BipartiteGraph& h,
                                           const Rat& alpha);

struct ExpansionEntry {
  std::uint32_t clients;  // bitmask of the subset
  Rat psi_g;
  Rat psi_h;
};

// Vertex expansion |N(X)|/|X| of every nonempty client subset in both
// graphs. Capped at n_left <= 16.
std::vector<ExpansionEntry> expansion_profile(const BipartiteGraph& g,
                                              const BipartiteGraph& h);

// Random subgraph of the complete n x n bipartite graph, each edge kept
// independently with probability p. One uniform draw per edge in
// lexicographic (client, server) order, so a seed replays exactly.
BipartiteGraph sample_complete_sparsifier(int n, double p,
                                          std::uint64_t seed);

struct BrittlenessWitness {
  BipartiteGraph h;
  std::vector<int> clients;  // X: left endpoints of the removed edges
};

// Removes min(ceil(|M_i|/2)+1, |M_i|) edges of matching i from the host of
// a verified 2*alpha contractor. The returned X is matchable in g yet has
// |N_h(X)| < |X|/alpha, so h fails every alpha-sparsifier test.
BrittlenessWitness brittleness_witness(const BipartiteGraph& g,
                                       const MatchingDecomposition& d,
                                       const Rat& alpha, int matching_index);

}  // namespace lbs
