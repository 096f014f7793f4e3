#include "lbs/lp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "lbs/errors.hpp"
#include "lbs/matching.hpp"
#include "lbs/rng.hpp"

namespace lbs {

namespace {

std::vector<int> mask_to_clients(std::uint32_t mask) {
  std::vector<int> out;
  for (int c = 0; mask; ++c, mask >>= 1)
    if (mask & 1) out.push_back(c);
  return out;
}

}  // namespace

bool deviates(const Edge& e, const ContractingPair& p) {
  return (p.clients >> e.client & 1) && !(p.servers >> e.server & 1);
}

std::vector<ContractingPair> enumerate_contracting_pairs(
    const BipartiteGraph& g, const Rat& alpha) {
  if (alpha < 1) throw InputError("alpha must be >= 1");
  if (g.num_clients() > 10 || g.num_servers() > 12)
    throw InputError("pair enumeration is capped at 10 clients / 12 servers");
  int n = g.num_clients(), r = g.num_servers();

  // Server masks grouped by popcount so each X only scans the sizes its
  // bound allows.
  std::vector<std::vector<std::uint32_t>> by_size(r + 1);
  for (std::uint32_t y = 0; y < (std::uint32_t{1} << r); ++y)
    by_size[std::popcount(y)].push_back(y);

  std::vector<ContractingPair> pairs;
  for (std::uint32_t x = 1; x < (std::uint32_t{1} << n); ++x) {
    std::vector<int> clients = mask_to_clients(x);
    if (!is_matchable(g, clients)) continue;
    // |Y| <= |X|/(2*alpha)
    Rat cap = Rat(std::popcount(x)) / (2 * alpha);
    for (int size = 0; size <= r && Rat(size) <= cap; ++size)
      for (std::uint32_t y : by_size[size]) pairs.push_back({x, y});
  }
  return pairs;
}

namespace {

// Constraint matrix rows indexed by pairs, columns by edges: 1 when the
// edge deviates from the pair.
std::vector<std::vector<Rat>> deviation_matrix(
    const BipartiteGraph& g, const std::vector<ContractingPair>& pairs) {
  std::vector<std::vector<Rat>> a(pairs.size(),
                                  std::vector<Rat>(g.num_edges(), Rat(0)));
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (int j = 0; j < g.num_edges(); ++j)
      if (deviates(g.edges()[j], pairs[i])) a[i][j] = 1;
  return a;
}

Rat half_size(const ContractingPair& p) {
  return Rat(std::popcount(p.clients), 2);
}

// For a fixed X, the pair with Y maximal dominates every Y' subset of Y:
// its constraint sums fewer edge values against the same |X|/2, and in the
// packing direction its variable consumes fewer edge budgets for the same
// objective coefficient. Solving over pairs with |Y| = min(floor(|X|/2a),
// n_right) therefore changes neither optimum.
std::vector<std::size_t> maximal_pair_indices(
    const BipartiteGraph& g, const Rat& alpha,
    const std::vector<ContractingPair>& pairs) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Rat cap = Rat(std::popcount(pairs[i].clients)) / (2 * alpha);
    long long floor_cap =
        BigInt(numerator(cap) / denominator(cap)).convert_to<long long>();
    int max_size =
        std::min<long long>(floor_cap, g.num_servers());
    if (std::popcount(pairs[i].servers) == max_size) kept.push_back(i);
  }
  return kept;
}

}  // namespace

LpSolution solve_primal(const BipartiteGraph& g, const Rat& alpha) {
  std::vector<ContractingPair> pairs = enumerate_contracting_pairs(g, alpha);
  LpSolution sol;
  sol.edge_values.assign(g.num_edges(), Rat(0));
  if (pairs.empty()) {
    sol.objective = 0;
    return sol;
  }
  std::vector<ContractingPair> rows;
  for (std::size_t i : maximal_pair_indices(g, alpha, pairs))
    rows.push_back(pairs[i]);
  std::vector<std::vector<Rat>> a = deviation_matrix(g, rows);
  for (const auto& row : a) {
    if (std::all_of(row.begin(), row.end(),
                    [](const Rat& v) { return v == 0; })) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
  }
  std::vector<Rat> b;
  b.reserve(rows.size());
  for (const ContractingPair& p : rows) b.push_back(half_size(p));
  SimplexResult r = simplex_min_cover(a, b);
  sol.status = r.status;
  if (r.status == LpStatus::optimal) {
    sol.objective = r.objective;
    sol.edge_values = std::move(r.x);
  }
  return sol;
}

DualSolution solve_dual(const BipartiteGraph& g, const Rat& alpha) {
  DualSolution sol;
  sol.pairs = enumerate_contracting_pairs(g, alpha);
  sol.pair_values.assign(sol.pairs.size(), Rat(0));
  if (sol.pairs.empty()) {
    sol.objective = 0;
    return sol;
  }
  std::vector<std::size_t> cols = maximal_pair_indices(g, alpha, sol.pairs);
  // One packing constraint per edge over the pairs the edge deviates from.
  std::vector<std::vector<Rat>> a(
      g.num_edges(), std::vector<Rat>(cols.size(), Rat(0)));
  for (int e = 0; e < g.num_edges(); ++e)
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (deviates(g.edges()[e], sol.pairs[cols[i]])) a[e][i] = 1;
  std::vector<Rat> b(g.num_edges(), Rat(1));
  std::vector<Rat> c;
  c.reserve(cols.size());
  for (std::size_t i : cols) c.push_back(half_size(sol.pairs[i]));
  SimplexResult r = simplex_max(a, b, c);
  sol.status = r.status;
  if (r.status == LpStatus::optimal) {
    sol.objective = r.objective;
    for (std::size_t i = 0; i < cols.size(); ++i)
      sol.pair_values[cols[i]] = std::move(r.x[i]);
  }
  return sol;
}

bool primal_feasible(const BipartiteGraph& g, const Rat& alpha,
                     const std::vector<Rat>& edge_values) {
  if (static_cast<int>(edge_values.size()) != g.num_edges()) return false;
  for (const Rat& v : edge_values)
    if (v < 0) return false;
  for (const ContractingPair& p : enumerate_contracting_pairs(g, alpha)) {
    Rat total = 0;
    for (int e = 0; e < g.num_edges(); ++e)
      if (deviates(g.edges()[e], p)) total += edge_values[e];
    if (total < half_size(p)) return false;
  }
  return true;
}

bool dual_feasible(const BipartiteGraph& g,
                   const std::vector<ContractingPair>& pairs,
                   const std::vector<Rat>& pair_values) {
  if (pairs.size() != pair_values.size()) return false;
  for (const Rat& v : pair_values)
    if (v < 0) return false;
  for (const Edge& e : g.edges()) {
    Rat total = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (deviates(e, pairs[i])) total += pair_values[i];
    if (total > 1) return false;
  }
  return true;
}

BipartiteGraph round_primal(const BipartiteGraph& g, const Rat& alpha,
                            const LpSolution& sol, std::uint64_t seed) {
  if (g.num_clients() < 2)
    throw InputError("round_primal needs at least 2 clients");
  if (sol.status != LpStatus::optimal ||
      !primal_feasible(g, alpha / 2, sol.edge_values))
    throw InputError("solution is not feasible for LP(G, alpha/2)");

  double p = 10.0 * std::log(static_cast<double>(g.num_clients()));
  std::mt19937_64 gen = rng::engine(seed);
  std::vector<Edge> kept;
  for (int e = 0; e < g.num_edges(); ++e) {
    double prob = std::min(p * rat_to_double(sol.edge_values[e]), 1.0);
    if (rng::uniform01(gen) < prob) kept.push_back(g.edges()[e]);
  }
  return BipartiteGraph(g.num_clients(), g.num_servers(), std::move(kept));
}

DualRounding round_dual(const BipartiteGraph& g, const Rat& alpha,
                        const DualSolution& sol, std::uint64_t seed) {
  if (alpha < 2) throw InputError("round_dual needs alpha >= 2");
  if (sol.status != LpStatus::optimal ||
      !dual_feasible(g, sol.pairs, sol.pair_values))
    throw InputError("solution is not feasible for the dual LP");

  // One draw per pair, in enumeration order, so seeds replay exactly.
  std::mt19937_64 gen = rng::engine(seed);
  std::vector<std::size_t> sampled;
  for (std::size_t i = 0; i < sol.pairs.size(); ++i) {
    double prob = rat_to_double(sol.pair_values[i]) / 10.0;
    if (rng::uniform01(gen) < prob) sampled.push_back(i);
  }

  DualRounding out;
  out.sampled_pairs = static_cast<int>(sampled.size());

  // Matchings fixed per matchable X, independent of y and of the sampling.
  std::map<std::uint32_t, Matching> fixed;
  auto matching_for = [&](std::uint32_t x) -> const Matching& {
    auto it = fixed.find(x);
    if (it == fixed.end())
      it = fixed.emplace(x, lexmin_saturating_matching(g, mask_to_clients(x)))
               .first;
    return it->second;
  };

  // Candidate matchings after the Y-removal step.
  std::vector<std::vector<Edge>> candidates;
  for (std::size_t idx : sampled) {
    const ContractingPair& p = sol.pairs[idx];
    std::vector<Edge> m_prime;
    for (const Edge& e : matching_for(p.clients).pairs())
      if (!(p.servers >> e.server & 1)) m_prime.push_back(e);
    out.candidate_edges += static_cast<long long>(m_prime.size());
    candidates.push_back(std::move(m_prime));
  }

  // An edge is overloaded when it deviates from two distinct sampled pairs.
  auto deviation_count = [&](const Edge& e) {
    int n = 0;
    for (std::size_t idx : sampled)
      if (deviates(e, sol.pairs[idx])) n++;
    return n;
  };

  std::vector<Edge> support;
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    const ContractingPair& p = sol.pairs[sampled[i]];
    std::vector<Edge> m_second;
    for (const Edge& e : candidates[i]) {
      if (deviation_count(e) >= 2)
        out.overloaded_edges++;
      else
        m_second.push_back(e);
    }
    // Good when at least half of X survives.
    if (2 * static_cast<int>(m_second.size()) <
        std::popcount(p.clients))
      continue;
    out.good_matchings++;
    support.insert(support.end(), m_second.begin(), m_second.end());
    out.decomposition.matchings.push_back(Matching(std::move(m_second)));
  }

  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  out.graph =
      BipartiteGraph(g.num_clients(), g.num_servers(), std::move(support));
  return out;
}

ServerReduction reduce_servers(const BipartiteGraph& g) {
  int cap = g.num_clients();
  std::vector<Edge> kept;
  for (int c = 0; c < g.num_clients(); ++c) {
    auto nbrs = g.neighbors(c);
    int keep = std::min<int>(cap, static_cast<int>(nbrs.size()));
    for (int i = 0; i < keep; ++i) kept.push_back({c, nbrs[i]});
  }
  std::vector<int> used(g.num_servers(), 0);
  for (const Edge& e : kept) used[e.server] = 1;
  ServerReduction out;
  std::vector<int> remap(g.num_servers(), -1);
  for (int s = 0; s < g.num_servers(); ++s) {
    if (used[s]) {
      remap[s] = static_cast<int>(out.server_ids.size());
      out.server_ids.push_back(s);
    }
  }
  for (Edge& e : kept) e.server = remap[e.server];
  out.graph =
      BipartiteGraph(g.num_clients(),
                     static_cast<int>(out.server_ids.size()), std::move(kept));
  return out;
}

}  // namespace lbs
