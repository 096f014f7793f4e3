#include <doctest.h>

#include <cmath>

#include "lbs/commgame.hpp"
#include "lbs/errors.hpp"
#include "lbs/loadbal.hpp"
#include "lbs/sparsifier.hpp"
#include "oracles.hpp"

using namespace lbs;

namespace {

// Two disjoint matchings of size 4: external neighborhoods are empty, so
// the pair verifies at any alpha and sizes share one bucket.
Construction disjoint_base() {
  Matching m1({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  Matching m2({{4, 4}, {5, 5}, {6, 6}, {7, 7}});
  MatchingDecomposition d{{m1, m2}};
  BipartiteGraph g(8, 8, d.support());
  return {std::move(g), std::move(d)};
}

// Two size-4 matchings sharing client 3: both external neighborhoods have
// size 1, so the base verifies exactly up to alpha 4.
Construction overlap_base() {
  Matching m1({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  Matching m2({{3, 4}, {4, 5}, {5, 6}, {6, 7}});
  MatchingDecomposition d{{m1, m2}};
  BipartiteGraph g(7, 8, d.support());
  return {std::move(g), std::move(d)};
}

}  // namespace

TEST_CASE("encoding on the stated examples") {
  SUBCASE("all-zero bits copy the base onto even servers") {
    Construction b = disjoint_base();
    Encoding enc = encode(b.graph, b.decomposition,
                          std::vector<std::uint8_t>(8, 0));
    CHECK(enc.graph.num_servers() == 16);
    for (const Edge& e : b.graph.edges())
      CHECK(enc.graph.has_edge(e.client, 2 * e.server));
    CHECK(enc.graph.num_edges() == b.graph.num_edges());
  }
  SUBCASE("a one-bit flips the single edge to the odd copy") {
    Matching m({{0, 0}});
    MatchingDecomposition d{{m}};
    BipartiteGraph g(1, 1, d.support());
    Encoding enc = encode(g, d, {1});
    CHECK(enc.graph.edges() == std::vector<Edge>{{0, 1}});
  }
  SUBCASE("bit string length must match") {
    Construction b = disjoint_base();
    CHECK_THROWS_AS(encode(b.graph, b.decomposition, {0, 1}), InputError);
  }
  SUBCASE("duplicated support edges are rejected") {
    Matching m1({{0, 0}});
    Matching m2({{0, 0}});
    MatchingDecomposition d{{m1, m2}};
    BipartiteGraph g(1, 1, {{0, 0}});
    CHECK_THROWS_AS(encode(g, d, {0, 0}), InputError);
  }
}

TEST_CASE("encodings of verified bases re-verify at half the guarantee") {
  for (const Construction& base : {disjoint_base(), overlap_base()}) {
    Rat alpha = 1;  // both bases verify at 4*alpha = 4
    REQUIRE(verify(base.graph, base.decomposition, 4 * alpha).passes);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      EncodedInstance inst =
          sample_hard_instance(base.graph, base.decomposition, alpha, seed);
      CHECK(verify(inst.alice_graph, inst.alice_decomp, 2 * alpha).passes);
    }
  }
}

TEST_CASE("hard instances replay and have the right shape") {
  Construction b = disjoint_base();
  EncodedInstance a = sample_hard_instance(b.graph, b.decomposition, 1, 42);
  EncodedInstance c = sample_hard_instance(b.graph, b.decomposition, 1, 42);
  CHECK(a.bits == c.bits);
  CHECK(a.matching_index == c.matching_index);
  CHECK(a.combined == c.combined);

  CHECK(a.bob_matching.size() ==
        b.graph.num_clients() -
            b.decomposition.matchings[a.matching_index].size());
  // Fresh servers sit after the doubled encoding servers.
  for (const Edge& e : a.bob_matching.pairs())
    CHECK(e.server >= a.alice_graph.num_servers());
  CHECK(a.combined.num_servers() ==
        a.alice_graph.num_servers() + a.bob_matching.size());
}

TEST_CASE("hard instances always admit a load-1 assignment") {
  for (const Construction& base : {disjoint_base(), overlap_base()}) {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
      EncodedInstance inst =
          sample_hard_instance(base.graph, base.decomposition, 1, seed);
      CHECK(optload(inst.combined, all_clients(inst.combined)) == 1);
    }
  }
}

TEST_CASE("sampled bits are unbiased per position") {
  Construction b = disjoint_base();
  const int trials = 1000;
  std::vector<int> ones(8, 0);
  for (int t = 0; t < trials; ++t) {
    EncodedInstance inst = sample_hard_instance(
        b.graph, b.decomposition, 1, rng::substream(7777, t)());
    for (int i = 0; i < 8; ++i) ones[i] += inst.bits[i];
  }
  double sigma = std::sqrt(0.25 / trials);
  for (int i = 0; i < 8; ++i) {
    double freq = ones[i] / static_cast<double>(trials);
    CHECK(std::abs(freq - 0.5) <= 3 * sigma);
  }
}

TEST_CASE("sampling requires a normalized verified base") {
  // Matchings of sizes 4 and 1 fall into different buckets; grouping keeps
  // only the size-4 one, and the result verifies trivially.
  Matching m1({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  Matching m2({{4, 4}});
  MatchingDecomposition d{{m1, m2}};
  BipartiteGraph g(5, 5, d.support());
  EncodedInstance inst = sample_hard_instance(g, d, 1, 0);
  CHECK(inst.base_decomp.num_matchings() == 1);
  CHECK(inst.base_graph.num_edges() == 4);

  // An unverifiable base is rejected.
  Matching a({{0, 0}, {1, 1}});
  Matching b({{0, 2}, {1, 3}});
  MatchingDecomposition bad{{a, b}};
  BipartiteGraph gb(2, 4, bad.support());
  CHECK_THROWS_AS(sample_hard_instance(gb, bad, 1, 0), InputError);
}

TEST_CASE("recovery fraction on hand-built assignments") {
  // One client, two one-edge matchings: the assignment either follows the
  // chosen matching or deviates entirely.
  MatchingDecomposition d{{Matching({{0, 0}}), Matching({{0, 1}})}};
  BipartiteGraph g(1, 2, d.support());
  EncodedInstance inst;
  inst.base_graph = g;
  inst.base_decomp = d;
  inst.alpha = 1;
  inst.bits = {0, 0};
  Encoding enc = encode(g, d, inst.bits);
  inst.alice_graph = enc.graph;
  inst.alice_decomp = enc.decomposition;
  inst.matching_index = 0;
  inst.bob_matching = Matching();
  inst.combined = inst.alice_graph;

  Assignment follow{{0}, 4};  // uses edge (0, 0): the matching edge
  CHECK(recovery_fraction(inst, follow) == 1);
  Assignment avoid{{2}, 4};  // uses edge (0, 2): the other matching
  CHECK(recovery_fraction(inst, avoid) == 0);
  Assignment invalid{{1}, 4};
  CHECK_THROWS_AS(recovery_fraction(inst, invalid), InputError);
}

TEST_CASE("bounded-load assignments recover half of the chosen matching") {
  for (const Construction& base : {disjoint_base(), overlap_base()}) {
    Rat alpha = 1;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      EncodedInstance inst =
          sample_hard_instance(base.graph, base.decomposition, alpha, seed);
      int bounded = 0;
      oracles::for_each_assignment(
          inst.combined, [&](const Assignment& a) {
            if (Rat(max_load(a)) > alpha) return;
            bounded++;
            CHECK(recovery_fraction(inst, a) >= Rat(1, 2));
          });
      CHECK(bounded > 0);
    }
  }
}

TEST_CASE("protocol outcomes on the stated examples") {
  BipartiteGraph g = oracles::complete_graph(3, 3);
  SUBCASE("identity strategy solves exactly") {
    auto [ga, gb] = partition_edges(g, 0.5, 5);
    ProtocolOutcome out = run_protocol(
        ga, gb, [](const BipartiteGraph& x) { return x; }, 2);
    CHECK(out.ratio == 1);
    CHECK(out.message_bits ==
          ga.num_edges() * 4);  // ceil(log2(9)) = 4 bits per edge
  }
  SUBCASE("Bob holding everything makes any message enough") {
    BipartiteGraph empty(3, 3, {});
    ProtocolOutcome out = run_protocol(
        g, g,
        [&](const BipartiteGraph&) { return empty; }, 2);
    CHECK(out.ratio == 1);
    CHECK(out.message_bits == 0);
  }
  SUBCASE("verified sparsifier messages stay within alpha + 1") {
    std::mt19937_64 gen = rng::engine(808);
    Rat alpha = 2;
    int verified_runs = 0;
    for (int trial = 0; trial < 60; ++trial) {
      int nl = 2 + rng::uniform_int(gen, 4);
      int nr = 2 + rng::uniform_int(gen, 4);
      BipartiteGraph full = oracles::random_graph(gen, nl, nr, 0.7);
      bool covered = true;
      for (int c = 0; c < nl; ++c) covered = covered && full.degree(c) > 0;
      if (!covered) continue;
      auto [ga, gb] = partition_edges(full, 0.6, gen());
      BipartiteGraph message = oracles::random_subgraph(gen, ga, 0.8);
      if (!is_sparsifier_operational(ga, message, alpha).passes) continue;
      verified_runs++;
      ProtocolOutcome out = run_protocol(
          ga, gb, [&](const BipartiteGraph&) { return message; }, alpha);
      CHECK(out.ratio <= alpha + 1);
    }
    CHECK(verified_runs > 10);
  }
  SUBCASE("strategies must send subgraphs") {
    CHECK_THROWS_AS(
        run_protocol(
            BipartiteGraph(3, 3, {}), g,
            [&](const BipartiteGraph&) { return g; }, 2),
        InputError);
  }
}

TEST_CASE("edge partitions on the stated examples") {
  BipartiteGraph g = oracles::complete_graph(3, 3);
  SUBCASE("p = 1 gives Alice everything") {
    auto [ga, gb] = partition_edges(g, 1.0, 3);
    CHECK(ga == g);
    CHECK(gb.num_edges() == 0);
  }
  SUBCASE("p = 0 gives Bob everything") {
    auto [ga, gb] = partition_edges(g, 0.0, 3);
    CHECK(ga.num_edges() == 0);
    CHECK(gb == g);
  }
  SUBCASE("partitions are exact and replayable") {
    auto [ga, gb] = partition_edges(g, 0.5, 77);
    auto [ga2, gb2] = partition_edges(g, 0.5, 77);
    CHECK(ga == ga2);
    CHECK(gb == gb2);
    CHECK(BipartiteGraph::union_of(ga, gb) == g);
    CHECK(ga.num_edges() + gb.num_edges() == g.num_edges());
  }
  SUBCASE("adversarial partition splits encoding from fresh matching") {
    Construction b = disjoint_base();
    EncodedInstance inst =
        sample_hard_instance(b.graph, b.decomposition, 1, 9);
    auto [ga, gb] = partition_edges(inst);
    CHECK(BipartiteGraph::union_of(ga, gb) == inst.combined);
    CHECK(ga.num_edges() == inst.alice_graph.num_edges());
    CHECK(gb.num_edges() == inst.bob_matching.size());
  }
}
