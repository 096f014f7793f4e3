#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lbs/contractor.hpp"
#include "lbs/graph.hpp"
#include "lbs/rational.hpp"

namespace lbs {

// Encoding of a bit string into a duplicate-free contractor: servers are
// doubled (base server v becomes 2v and 2v+1) and base edge e = (u, v) is
// realized as (u, 2v + bit_e). Bits are indexed by the decomposition's
// labeled edges in matching-major, ascending-client order.
struct Encoding {
  BipartiteGraph graph;
  MatchingDecomposition decomposition;
};

Encoding encode(const BipartiteGraph& g0, const MatchingDecomposition& d0,
                const std::vector<std::uint8_t>& bits);

struct EncodedInstance {
  BipartiteGraph base_graph;  // normalized host (support of base_decomp)
  MatchingDecomposition base_decomp;
  Rat alpha;
  std::vector<std::uint8_t> bits;
  BipartiteGraph alice_graph;  // encoding graph of bits
  MatchingDecomposition alice_decomp;
  int matching_index = 0;
  Matching bob_matching;     // saturates clients outside the chosen matching
  BipartiteGraph combined;   // alice_graph plus Bob's fresh-server edges
};

// Draws from the hard input distribution: normalizes (g0, d0) by size
// grouping, requires the result to verify at 4*alpha and be duplicate-free,
// then samples uniform bits and a uniform matching index. Bob's matching
// goes to |L| - |M_i| fresh servers appended after the encoding servers.
// Fully determined by the seed (bits first, then the index).
EncodedInstance sample_hard_instance(const BipartiteGraph& g0,
                                     const MatchingDecomposition& d0,
                                     const Rat& alpha, std::uint64_t seed);

// Fraction of the chosen matching's edges used verbatim by an assignment of
// the combined graph.
Rat recovery_fraction(const EncodedInstance& inst, const Assignment& a);

using SparsifyStrategy =
    std::function<BipartiteGraph(const BipartiteGraph&)>;

struct ProtocolOutcome {
  Assignment assignment;  // optimal for Alice's message union Bob's graph
  long long message_bits = 0;
  Rat ratio;  // MAXLOAD(assignment) / OPTLOAD(full graph)
};

// One-way protocol simulation: Alice sends sparsify(g_a), Bob outputs the
// optimal assignment of message + g_b. Message accounting charges
// ceil(log2(n_left*n_right)) bits per edge.
ProtocolOutcome run_protocol(const BipartiteGraph& g_a,
                             const BipartiteGraph& g_b,
                             const SparsifyStrategy& sparsify,
                             const Rat& alpha);

// Random edge partition: each edge to Alice independently with probability
// p, remainder to Bob.
std::pair<BipartiteGraph, BipartiteGraph> partition_edges(
    const BipartiteGraph& g, double p, std::uint64_t seed);

// Adversarial partition per the hard distribution: Alice holds the encoding
// graph, Bob the fresh matching, both embedded in the combined vertex sets.
std::pair<BipartiteGraph, BipartiteGraph> partition_edges(
    const EncodedInstance& inst);

}  // namespace lbs
