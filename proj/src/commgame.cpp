#include "lbs/commgame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lbs/errors.hpp"
#include "lbs/loadbal.hpp"
#include "lbs/rng.hpp"

namespace lbs {

Encoding encode(const BipartiteGraph& g0, const MatchingDecomposition& d0,
                const std::vector<std::uint8_t>& bits) {
  if (!d0.duplicate_free())
    throw InputError(
        "encoding needs a duplicate-free decomposition (each edge in exactly "
        "one matching); convert with to_rs_graph first");
  if (d0.support() != g0.edges())
    throw InputError("decomposition does not cover every host edge");
  if (static_cast<long long>(bits.size()) != d0.labeled_edge_count())
    throw InputError("bit string length " + std::to_string(bits.size()) +
                     " does not match the labeled edge count");
  for (std::uint8_t b : bits)
    if (b > 1) throw InputError("bits must be 0 or 1");

  Encoding out;
  std::vector<Edge> edges;
  std::size_t idx = 0;
  for (const Matching& m : d0.matchings) {
    std::vector<Edge> mapped;
    for (const Edge& e : m.pairs()) {
      mapped.push_back({e.client, 2 * e.server + bits[idx++]});
      edges.push_back(mapped.back());
    }
    out.decomposition.matchings.push_back(Matching(std::move(mapped)));
  }
  out.graph = BipartiteGraph(g0.num_clients(), 2 * g0.num_servers(),
                             std::move(edges));
  return out;
}

EncodedInstance sample_hard_instance(const BipartiteGraph& g0,
                                     const MatchingDecomposition& d0,
                                     const Rat& alpha, std::uint64_t seed) {
  if (alpha < 1) throw InputError("alpha must be >= 1");
  SizeGroup grouped = group_by_size(d0);
  EncodedInstance inst;
  inst.base_decomp = std::move(grouped.kept);
  inst.base_graph = BipartiteGraph(g0.num_clients(), g0.num_servers(),
                                   inst.base_decomp.support());
  inst.alpha = alpha;
  if (!inst.base_decomp.duplicate_free())
    throw InputError(
        "normalized decomposition is not duplicate-free; convert with "
        "to_rs_graph first");
  if (!verify(inst.base_graph, inst.base_decomp, 4 * alpha).passes)
    throw InputError(
        "base does not verify as a 4*alpha matching-contractor");

  std::mt19937_64 gen = rng::engine(seed);
  long long m0 = inst.base_decomp.labeled_edge_count();
  inst.bits.reserve(m0);
  for (long long i = 0; i < m0; ++i)
    inst.bits.push_back(static_cast<std::uint8_t>(rng::uniform_int(gen, 2)));
  inst.matching_index =
      rng::uniform_int(gen, inst.base_decomp.num_matchings());

  Encoding enc = encode(inst.base_graph, inst.base_decomp, inst.bits);
  inst.alice_graph = std::move(enc.graph);
  inst.alice_decomp = std::move(enc.decomposition);

  // Bob: fresh servers appended after the encoding servers, one per client
  // outside L(M_i), in ascending client order.
  const Matching& chosen = inst.alice_decomp.matchings[inst.matching_index];
  std::vector<int> covered = chosen.left_vertices();
  std::vector<Edge> bob;
  int fresh = inst.alice_graph.num_servers();
  for (int c = 0; c < inst.base_graph.num_clients(); ++c) {
    if (std::binary_search(covered.begin(), covered.end(), c)) continue;
    bob.push_back({c, fresh++});
  }
  int total_servers = fresh;
  inst.bob_matching = Matching(bob);

  std::vector<Edge> combined = inst.alice_graph.edges();
  combined.insert(combined.end(), bob.begin(), bob.end());
  inst.combined = BipartiteGraph(inst.base_graph.num_clients(),
                                 total_servers, std::move(combined));
  return inst;
}

Rat recovery_fraction(const EncodedInstance& inst, const Assignment& a) {
  if (!a.valid_on(inst.combined))
    throw InputError("assignment is not valid on the combined graph");
  if (a.domain_size() != inst.combined.num_clients())
    throw InputError("assignment must cover every client");
  const Matching& m = inst.alice_decomp.matchings[inst.matching_index];
  int used = 0;
  for (const Edge& e : m.pairs()) used += (a.server_of[e.client] == e.server);
  return Rat(used, m.size());
}

ProtocolOutcome run_protocol(const BipartiteGraph& g_a,
                             const BipartiteGraph& g_b,
                             const SparsifyStrategy& sparsify,
                             const Rat& alpha) {
  if (alpha < 1) throw InputError("alpha must be >= 1");
  BipartiteGraph full = BipartiteGraph::union_of(g_a, g_b);
  for (int c = 0; c < full.num_clients(); ++c)
    if (full.degree(c) == 0)
      throw InputError("client " + std::to_string(c) +
                       " has no neighbor in the full graph");

  BipartiteGraph message = sparsify(g_a);
  if (!message.is_subgraph_of(g_a))
    throw InputError("strategy output is not a subgraph of Alice's graph");

  BipartiteGraph bob_view = BipartiteGraph::union_of(message, g_b);
  for (int c = 0; c < bob_view.num_clients(); ++c)
    if (bob_view.degree(c) == 0)
      throw InputError("strategy output isolates client " +
                       std::to_string(c));

  ProtocolOutcome out;
  out.assignment = optimal_assignment(bob_view, all_clients(bob_view));
  long long label_space = static_cast<long long>(full.num_clients()) *
                          full.num_servers();
  int bits_per_edge = 0;
  while ((1LL << bits_per_edge) < label_space) bits_per_edge++;
  out.message_bits =
      static_cast<long long>(message.num_edges()) * bits_per_edge;

  std::optional<int> opt = optload(full, all_clients(full));
  int achieved = max_load(out.assignment);
  if (achieved == 0 && *opt == 0)
    out.ratio = 1;
  else
    out.ratio = Rat(achieved, *opt);
  return out;
}

std::pair<BipartiteGraph, BipartiteGraph> partition_edges(
    const BipartiteGraph& g, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw InputError("need 0 <= p <= 1");
  std::mt19937_64 gen = rng::engine(seed);
  std::vector<Edge> alice, bob;
  for (const Edge& e : g.edges())
    (rng::uniform01(gen) < p ? alice : bob).push_back(e);
  return {BipartiteGraph(g.num_clients(), g.num_servers(), std::move(alice)),
          BipartiteGraph(g.num_clients(), g.num_servers(), std::move(bob))};
}

std::pair<BipartiteGraph, BipartiteGraph> partition_edges(
    const EncodedInstance& inst) {
  const BipartiteGraph& c = inst.combined;
  BipartiteGraph alice(c.num_clients(), c.num_servers(),
                       inst.alice_graph.edges());
  BipartiteGraph bob(c.num_clients(), c.num_servers(),
                     inst.bob_matching.pairs());
  return {std::move(alice), std::move(bob)};
}

}  // namespace lbs
