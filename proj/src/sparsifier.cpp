#include "lbs/sparsifier.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "lbs/errors.hpp"
#include "lbs/loadbal.hpp"
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

void require_subgraph(const BipartiteGraph& g, const BipartiteGraph& h) {
  if (!h.is_subgraph_of(g))
    throw InputError("H is not a subgraph of G on the same vertex sets");
}

// |N(X)| for every client subset mask. Uses the mask DP when servers fit a
// word, otherwise an incremental mark/undo recursion.
std::vector<int> subset_neighbor_counts(const BipartiteGraph& g) {
  int n = g.num_clients();
  std::size_t total = std::size_t{1} << n;
  std::vector<int> counts(total, 0);
  if (g.num_servers() <= 64) {
    std::vector<std::uint64_t> nbr(total, 0);
    for (std::uint32_t mask = 1; mask < total; ++mask) {
      std::uint32_t low = mask & (~mask + 1);
      nbr[mask] = nbr[mask ^ low] |
                  g.neighbor_mask(std::countr_zero(low));
      counts[mask] = std::popcount(nbr[mask]);
    }
    return counts;
  }
  std::vector<int> mark(g.num_servers(), 0);
  std::vector<int> undo;
  auto visit = [&](auto&& self, int idx, std::uint32_t mask, int nbrs) -> void {
    counts[mask] = nbrs;
    for (int c = idx; c < n; ++c) {
      std::size_t undo_base = undo.size();
      int added = 0;
      for (int s : g.neighbors(c)) {
        if (!mark[s]) {
          mark[s] = 1;
          undo.push_back(s);
          added++;
        }
      }
      self(self, c + 1, mask | (std::uint32_t{1} << c), nbrs + added);
      while (undo.size() > undo_base) {
        mark[undo.back()] = 0;
        undo.pop_back();
      }
    }
  };
  visit(visit, 0, 0, 0);
  return counts;
}

// matchable[mask] for every client subset of g.
std::vector<std::uint8_t> subset_matchable(const BipartiteGraph& g) {
  int n = g.num_clients();
  std::size_t total = std::size_t{1} << n;
  std::vector<std::uint8_t> matchable(total, 0);
  if (g.num_servers() <= 64) {
    // Hall via subset-minimum of |N(U)| - |U|.
    std::vector<std::uint64_t> nbr(total, 0);
    std::vector<int> defect(total, 0);
    matchable[0] = 1;
    for (std::uint32_t mask = 1; mask < total; ++mask) {
      std::uint32_t low = mask & (~mask + 1);
      nbr[mask] = nbr[mask ^ low] | g.neighbor_mask(std::countr_zero(low));
      int d = std::popcount(nbr[mask]) - std::popcount(mask);
      for (std::uint32_t rest = mask; rest;) {
        std::uint32_t bit = rest & (~rest + 1);
        d = std::min(d, defect[mask ^ bit]);
        rest ^= bit;
      }
      defect[mask] = d;
      matchable[mask] = (d == 0);
    }
    return matchable;
  }
  matchable[0] = 1;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    std::uint32_t low = mask & (~mask + 1);
    if (!matchable[mask ^ low]) continue;  // subsets of matchable only
    matchable[mask] = is_matchable(g, mask_to_clients(mask));
  }
  return matchable;
}

}  // namespace

SparsifierReport is_sparsifier_def(const BipartiteGraph& g,
                                   const BipartiteGraph& h,
                                   const Rat& alpha) {
  require_subgraph(g, h);
  if (alpha < 1) throw InputError("alpha must be >= 1");
  int n = g.num_clients();
  if (n > 16)
    throw InputError("is_sparsifier_def is capped at 16 clients, got " +
                     std::to_string(n));

  SparsifierReport report;
  report.worst_ratio = 1;  // the empty subset contributes 1
  std::uint32_t worst_mask = 0;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<int> c = mask_to_clients(mask);
    std::optional<int> og = optload(g, c);
    if (!og) continue;  // infeasible in G implies infeasible in H: vacuous
    std::optional<int> oh = optload(h, c);
    if (!oh) {
      report.ratio_bounded = false;
      worst_mask = mask;
      break;
    }
    Rat ratio(*oh, *og);
    if (ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      worst_mask = mask;
    }
  }
  report.passes = report.ratio_bounded && report.worst_ratio <= alpha;
  if (!report.passes) report.witness_clients = mask_to_clients(worst_mask);
  return report;
}

SparsifierReport is_sparsifier_operational(const BipartiteGraph& g,
                                           const BipartiteGraph& h,
                                           const Rat& alpha) {
  require_subgraph(g, h);
  if (alpha < 1) throw InputError("alpha must be >= 1");
  int n = g.num_clients();
  if (n > 20)
    throw InputError(
        "is_sparsifier_operational is capped at 20 clients, got " +
        std::to_string(n));

  std::vector<std::uint8_t> matchable = subset_matchable(g);
  std::vector<int> h_counts = subset_neighbor_counts(h);

  SparsifierReport report;
  report.worst_ratio = 0;
  std::uint32_t worst_mask = 0;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    if (!matchable[mask]) continue;
    if (h_counts[mask] == 0) {
      report.ratio_bounded = false;
      worst_mask = mask;
      break;
    }
    Rat ratio(std::popcount(mask), h_counts[mask]);
    if (ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      worst_mask = mask;
    }
  }
  report.passes = report.ratio_bounded && report.worst_ratio <= alpha;
  if (!report.passes) {
    report.witness_clients = mask_to_clients(worst_mask);
    report.witness_servers = neighborhood(h, *report.witness_clients);
  }
  return report;
}

std::vector<ExpansionEntry> expansion_profile(const BipartiteGraph& g,
                                              const BipartiteGraph& h) {
  if (g.num_clients() != h.num_clients() ||
      g.num_servers() != h.num_servers())
    throw InputError("expansion_profile needs graphs on the same vertex sets");
  int n = g.num_clients();
  if (n > 16)
    throw InputError("expansion_profile is capped at 16 clients, got " +
                     std::to_string(n));
  std::vector<int> gc = subset_neighbor_counts(g);
  std::vector<int> hc = subset_neighbor_counts(h);
  std::vector<ExpansionEntry> out;
  out.reserve((std::size_t{1} << n) - 1);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    int size = std::popcount(mask);
    out.push_back({mask, Rat(gc[mask], size), Rat(hc[mask], size)});
  }
  return out;
}

BipartiteGraph sample_complete_sparsifier(int n, double p,
                                          std::uint64_t seed) {
  if (n < 2) throw InputError("need n >= 2");
  if (!(p > 0.0) || p > 1.0) throw InputError("need 0 < p <= 1");
  std::mt19937_64 gen = rng::engine(seed);
  std::vector<Edge> edges;
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < n; ++s)
      if (rng::uniform01(gen) < p) edges.push_back({c, s});
  return BipartiteGraph(n, n, std::move(edges));
}

BrittlenessWitness brittleness_witness(const BipartiteGraph& g,
                                       const MatchingDecomposition& d,
                                       const Rat& alpha, int matching_index) {
  if (matching_index < 0 || matching_index >= d.num_matchings())
    throw InputError("matching index out of range");
  if (!verify(g, d, 2 * alpha).passes)
    throw InputError(
        "decomposition does not verify as a 2*alpha matching-contractor");

  const Matching& m = d.matchings[matching_index];
  int remove = std::min(m.size() / 2 + 1 + (m.size() % 2), m.size());
  std::vector<Edge> removed(m.pairs().begin(), m.pairs().begin() + remove);
  BrittlenessWitness w;
  w.h = g.without_edges(removed);
  for (const Edge& e : removed) w.clients.push_back(e.client);
  std::sort(w.clients.begin(), w.clients.end());
  return w;
}

}  // namespace lbs
