#pragma once

#include <cstdint>
#include <vector>

#include "lbs/contractor.hpp"
#include "lbs/graph.hpp"
#include "lbs/rational.hpp"
#include "lbs/simplex.hpp"

namespace lbs {

// (X, Y) with X a nonempty matchable client set and |Y| <= |X|/(2*alpha),
// stored as bitmasks. An edge (u, v) deviates from the pair when u is in X
// and v outside Y.
struct ContractingPair {
  std::uint32_t clients = 0;
  std::uint32_t servers = 0;
  friend bool operator==(const ContractingPair&,
                         const ContractingPair&) = default;
};

bool deviates(const Edge& e, const ContractingPair& p);

// All contracting pairs of g at alpha, in canonical order (client mask
// ascending, then server mask ascending). Capped at 10 clients / 12 servers.
std::vector<ContractingPair> enumerate_contracting_pairs(
    const BipartiteGraph& g, const Rat& alpha);

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  Rat objective;
  std::vector<Rat> edge_values;  // parallel to g.edges()
};

struct DualSolution {
  LpStatus status = LpStatus::optimal;
  Rat objective;
  std::vector<ContractingPair> pairs;
  std::vector<Rat> pair_values;  // parallel to pairs
};

// Covering LP: minimize sum of edge values subject to, for every
// contracting pair, at least |X|/2 total value on the edges deviating from
// it. Exact; status is infeasible iff some pair has no deviating edge.
LpSolution solve_primal(const BipartiteGraph& g, const Rat& alpha);

// Packing LP over pairs: maximize (1/2) * sum |X| * y subject to, per edge,
// total y over the pairs it deviates from at most 1. By strong duality its
// optimum equals solve_primal's exactly; unbounded iff the primal is
// infeasible.
DualSolution solve_dual(const BipartiteGraph& g, const Rat& alpha);

// Exact feasibility checks against the enumerated pair family.
bool primal_feasible(const BipartiteGraph& g, const Rat& alpha,
                     const std::vector<Rat>& edge_values);
bool dual_feasible(const BipartiteGraph& g,
                   const std::vector<ContractingPair>& pairs,
                   const std::vector<Rat>& pair_values);

// Randomized rounding of a solution feasible for LP(g, alpha/2): each edge
// kept independently with probability min(10*ln(n_left)*x_e, 1). Requires
// n_left >= 2.
BipartiteGraph round_primal(const BipartiteGraph& g, const Rat& alpha,
                            const LpSolution& sol, std::uint64_t seed);

struct DualRounding {
  BipartiteGraph graph;
  MatchingDecomposition decomposition;
  int sampled_pairs = 0;
  int good_matchings = 0;
  // Post-processing statistics: edges surviving the Y-removal step, and how
  // many of those were dropped as overloaded.
  long long candidate_edges = 0;
  long long overloaded_edges = 0;
};

// Matching-contractor construction from a feasible dual solution: sample
// each pair with probability y/10, fix the lexicographically smallest
// saturating matching per matchable X, drop Y-incident then overloaded
// edges, and keep the matchings that retain at least |X|/2 edges. The
// output always verifies at alpha. Requires alpha >= 2.
DualRounding round_dual(const BipartiteGraph& g, const Rat& alpha,
                        const DualSolution& sol, std::uint64_t seed);

struct ServerReduction {
  BipartiteGraph graph;
  std::vector<int> server_ids;  // new server index -> original index
};

// Caps every client degree at n_left (keeping lowest-index neighbors), then
// drops edgeless servers; |R'| <= n_left^2 and matchability of every client
// subset is preserved.
ServerReduction reduce_servers(const BipartiteGraph& g);

}  // namespace lbs
