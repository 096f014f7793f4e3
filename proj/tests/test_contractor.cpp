#include <doctest.h>

#include <bit>
#include <set>
#include <sstream>

#include "lbs/contractor.hpp"
#include "lbs/errors.hpp"
#include "oracles.hpp"

using namespace lbs;

namespace {

Construction w2k2() {
  SetFamily fam{2, 0, {0b0011, 0b1100}};
  return construct(2, 2, fam);
}

}  // namespace

TEST_CASE("verify on the stated examples") {
  SUBCASE("a lone matching verifies at every alpha") {
    Matching m({{0, 0}, {1, 1}});
    MatchingDecomposition d{{m}};
    BipartiteGraph g(2, 2, d.support());
    VerifyResult v = verify(g, d, 1000000);
    CHECK(v.passes);
    CHECK(!v.certificate.alpha_achieved.has_value());
    CHECK(v.certificate.per_matching ==
          std::vector<std::pair<int, int>>{{2, 0}});
  }
  SUBCASE("w=2 k=2 construction achieves exactly alpha 4") {
    Construction c = w2k2();
    VerifyResult v = verify(c.graph, c.decomposition, 4);
    CHECK(v.passes);
    REQUIRE(v.certificate.alpha_achieved.has_value());
    CHECK(*v.certificate.alpha_achieved == 4);
    for (const auto& [size, ext] : v.certificate.per_matching) {
      CHECK(size == 4);
      CHECK(ext == 1);
    }
    CHECK(!verify(c.graph, c.decomposition, 5).passes);
  }
  SUBCASE("host mismatch is rejected") {
    Matching m({{0, 0}});
    MatchingDecomposition d{{m}};
    BipartiteGraph g(1, 2, {{0, 0}, {0, 1}});  // edge (0,1) uncovered
    CHECK_THROWS_AS(verify(g, d, 2), InputError);
  }
}

TEST_CASE("construction shape on the stated examples") {
  SUBCASE("w=2 k=2 with two disjoint sets") {
    Construction c = w2k2();
    CHECK(c.graph.num_clients() == 16);
    CHECK(c.graph.num_servers() == 4);
    CHECK(c.decomposition.num_matchings() == 8);
    for (const Matching& m : c.decomposition.matchings) CHECK(m.size() == 4);
    CHECK(c.decomposition.labeled_edge_count() == 32);
    // Each round's groups partition the clients into w^k groups of w^k.
    for (int round = 0; round < 2; ++round) {
      std::set<int> seen;
      for (int x = 0; x < 4; ++x)
        for (int v : c.decomposition.matchings[4 * round + x].left_vertices())
          CHECK(seen.insert(v).second);
      CHECK(seen.size() == 16);
    }
  }
  SUBCASE("single-set family has empty external neighborhoods") {
    SetFamily fam{2, 0, {0b0011}};
    Construction c = construct(2, 2, fam);
    VerifyResult v = verify(c.graph, c.decomposition, 1);
    CHECK(!v.certificate.alpha_achieved.has_value());
  }
  SUBCASE("overlapping sets leave w^1 external vertices") {
    SetFamily fam{2, 1, {0b0011, 0b0110}};  // {1,2} and {2,3}
    Construction c = construct(2, 2, fam);
    VerifyResult v = verify(c.graph, c.decomposition, 1);
    for (const auto& [size, ext] : v.certificate.per_matching) {
      CHECK(size == 4);
      CHECK(ext == 2);
    }
  }
  SUBCASE("memory budget is enforced") {
    SetFamily fam{8, 0, {0xFF, 0xFF00}};
    CHECK_THROWS_AS(construct(2, 8, fam, 1000), InputError);
  }
}

TEST_CASE("external neighborhoods never exceed the intersection bound") {
  std::mt19937_64 gen = rng::engine(606);
  for (int trial = 0; trial < 10; ++trial) {
    int k = 2 + rng::uniform_int(gen, 2);
    SetFamily fam =
        gen_set_family(k, Rat(3, 10), 3, gen(), 10000);
    int w = 2 + rng::uniform_int(gen, 2);
    Construction c = construct(w, k, fam);
    VerifyResult v = verify(c.graph, c.decomposition, 1);
    long long rsize = 1;
    for (int i = 0; i < k; ++i) rsize *= w;
    for (std::size_t m = 0; m < v.certificate.per_matching.size(); ++m) {
      int round = static_cast<int>(m / rsize);
      CHECK(v.certificate.per_matching[m].second <=
            intersection_bound(fam, w, round));
    }
    // The bound turns directly into a verified contraction ratio.
    long long worst = 0;
    for (int i = 0; i < fam.size(); ++i)
      worst = std::max(worst, intersection_bound(fam, w, i));
    CHECK(verify(c.graph, c.decomposition, Rat(rsize, worst)).passes);
  }
}

TEST_CASE("intersection_bound on the stated examples") {
  SetFamily disjoint{2, 0, {0b0011, 0b1100}};
  CHECK(intersection_bound(disjoint, 2, 0) == 1);  // 2^0
  SetFamily overlap{2, 1, {0b0011, 0b0110}};
  CHECK(intersection_bound(overlap, 2, 0) == 2);  // 2^1
  SetFamily singleton{2, 0, {0b0011}};
  CHECK(intersection_bound(singleton, 2, 0) == 0);  // empty sum
}

TEST_CASE("set family generation") {
  SUBCASE("three sets for k=2 always fit the bound") {
    SetFamily fam = gen_set_family(2, Rat(2, 5), 3, 17);
    CHECK(fam.size() == 3);
    CHECK(fam.pair_bound == 1);
    fam.check();
  }
  SUBCASE("a single set is vacuously valid") {
    SetFamily fam = gen_set_family(3, Rat(1, 4), 1, 5);
    CHECK(fam.size() == 1);
    CHECK(std::popcount(fam.sets[0]) == 3);
  }
  SUBCASE("replay and the greedy mode") {
    SetFamily a = gen_set_family(4, Rat(3, 10), 3, 99);
    SetFamily b = gen_set_family(4, Rat(3, 10), 3, 99);
    CHECK(a.sets == b.sets);
    SetFamily c = gen_set_family(4, Rat(3, 10), 3, 99, 10000, true);
    c.check();
    CHECK(c.size() == 3);
  }
  SUBCASE("impossible targets fail with the best family attached") {
    // Only 6 two-subsets of [4] exist, so 7 distinct sets can never appear.
    try {
      gen_set_family(2, Rat(2, 5), 7, 3, 50);
      FAIL("expected FamilyGenError");
    } catch (const FamilyGenError& e) {
      CHECK(e.best().size() < 7);
      CHECK(e.best().size() >= 1);
      e.best().check();
    }
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(gen_set_family(4, Rat(1, 2), 2, 0), InputError);
    CHECK_THROWS_AS(gen_set_family(4, Rat(0), 2, 0), InputError);
    CHECK_THROWS_AS(gen_set_family(1, Rat(1, 4), 2, 0), InputError);
  }
  SUBCASE("exact floor of (1-delta)k") {
    // (1 - 3/10) * 10 = 7 exactly; floating point would give 6.999...
    SetFamily fam = gen_set_family(10, Rat(3, 10), 2, 1);
    CHECK(fam.pair_bound == 7);
  }
}

TEST_CASE("size grouping on the stated examples") {
  auto decomp_with_sizes = [](const std::vector<int>& sizes) {
    MatchingDecomposition d;
    int server = 0;
    int client = 0;
    for (int s : sizes) {
      std::vector<Edge> pairs;
      for (int i = 0; i < s; ++i) pairs.push_back({client++, server++});
      d.matchings.push_back(Matching(std::move(pairs)));
    }
    return d;
  };

  SUBCASE("uniform sizes keep everything") {
    MatchingDecomposition d = decomp_with_sizes({3, 3, 3});
    SizeGroup sg = group_by_size(d);
    CHECK(sg.r0 == 3);
    CHECK(sg.kept.num_matchings() == 3);
  }
  SUBCASE("sizes 1 and 2 split, larger edge mass wins") {
    MatchingDecomposition d = decomp_with_sizes({1, 2});
    SizeGroup sg = group_by_size(d);
    CHECK(sg.r0 == 2);
    CHECK(sg.kept.num_matchings() == 1);
  }
  SUBCASE("sizes 3 and 4 land in different buckets") {
    MatchingDecomposition d = decomp_with_sizes({3, 4});
    SizeGroup sg = group_by_size(d);
    CHECK(sg.r0 == 4);
    CHECK(sg.kept.num_matchings() == 1);
    CHECK(sg.kept.matchings[0].size() == 4);
  }
  SUBCASE("kept sizes stay within [r0, 4/3 r0) and retention holds") {
    std::mt19937_64 gen = rng::engine(607);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<int> sizes;
      int count = 1 + rng::uniform_int(gen, 6);
      long long total = 0;
      for (int i = 0; i < count; ++i) {
        sizes.push_back(1 + rng::uniform_int(gen, 12));
        total += sizes.back();
      }
      SizeGroup sg = group_by_size(decomp_with_sizes(sizes));
      long long kept_edges = sg.kept.labeled_edge_count();
      std::set<int> buckets;
      for (int s : sizes) {
        int j = 0;
        while (std::pow(4.0 / 3.0, j + 1) <= s + 1e-9) ++j;
        buckets.insert(j);
      }
      CHECK(kept_edges * static_cast<long long>(buckets.size()) >= total);
      for (const Matching& m : sg.kept.matchings) {
        CHECK(m.size() >= sg.r0);
        CHECK(3 * m.size() < 4 * sg.r0);
      }
    }
  }
  SUBCASE("empty decompositions are rejected") {
    MatchingDecomposition d;
    CHECK_THROWS_AS(group_by_size(d), InputError);
  }
}

TEST_CASE("induced-matching conversion on the stated examples") {
  SUBCASE("a lone matching only rounds down to a power of two") {
    Matching m({{0, 0}, {1, 1}, {2, 2}});
    MatchingDecomposition d{{m}};
    BipartiteGraph g(3, 3, d.support());
    Construction rs = to_rs_graph(g, d, 5);
    REQUIRE(rs.decomposition.num_matchings() == 1);
    CHECK(rs.decomposition.matchings[0].size() == 2);  // 3 rounds down
    CHECK(matchings_induced(rs.graph, rs.decomposition));
  }
  SUBCASE("w=2 k=2 at alpha 4 loses one edge then rounds 3 to 2") {
    Construction c = w2k2();
    Construction rs = to_rs_graph(c.graph, c.decomposition, 4);
    CHECK(rs.decomposition.num_matchings() == 8);
    for (const Matching& m : rs.decomposition.matchings)
      CHECK(m.size() == 2);
    CHECK(rs.graph.num_edges() == 16);
    CHECK(matchings_induced(rs.graph, rs.decomposition));
    CHECK(rs.decomposition.duplicate_free());
    CHECK(rs.graph.is_subgraph_of(c.graph));
  }
  SUBCASE("precondition failure") {
    Matching m1({{0, 0}});
    Matching m2({{0, 1}});
    MatchingDecomposition d{{m1, m2}};
    BipartiteGraph g(1, 2, d.support());
    CHECK_THROWS_AS(to_rs_graph(g, d, 2), InputError);
  }
}

TEST_CASE("rs conversion of dual-rounding style decompositions") {
  // Random small contractors assembled from disjoint matchings plus a
  // sprinkle of larger ones; the output must always be induced with one
  // power-of-two size class.
  std::mt19937_64 gen = rng::engine(608);
  for (int trial = 0; trial < 30; ++trial) {
    MatchingDecomposition d;
    int blocks = 1 + rng::uniform_int(gen, 3);
    int client = 0, server = 0;
    for (int b = 0; b < blocks; ++b) {
      int size = 1 + rng::uniform_int(gen, 5);
      std::vector<Edge> pairs;
      for (int i = 0; i < size; ++i) pairs.push_back({client++, server++});
      d.matchings.push_back(Matching(std::move(pairs)));
    }
    BipartiteGraph g(client, server, d.support());
    Construction rs = to_rs_graph(g, d, 2);
    CHECK(matchings_induced(rs.graph, rs.decomposition));
    int cls = -1;
    for (const Matching& m : rs.decomposition.matchings) {
      CHECK(std::has_single_bit(static_cast<unsigned>(m.size())));
      if (cls < 0) cls = m.size();
      CHECK(m.size() == cls);
    }
  }
}

TEST_CASE("witness files round-trip") {
  Construction c = w2k2();
  std::ostringstream out;
  write_witness(out, c.graph, c.decomposition);
  std::istringstream in(out.str());
  Construction back = read_witness(in);
  CHECK(back.graph == c.graph);
  CHECK(back.decomposition.matchings == c.decomposition.matchings);

  std::ostringstream again;
  write_witness(again, back.graph, back.decomposition);
  CHECK(again.str() == out.str());
}

TEST_CASE("witness parser reports malformed input") {
  auto fails_at = [](const std::string& text, int line) {
    std::istringstream in(text);
    try {
      read_witness(in);
      FAIL("expected ParseError for: ", text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  fails_at("xx 1 1 1\n", 1);
  fails_at("mc 1 1 1\nm 2\n0 0\n", 4);       // truncated matching
  fails_at("mc 1 1 1\nm 1\n0 5\n", 3);       // server out of range
  fails_at("mc 2 1 1\nm 2\n0 0\n1 0\n", 4);  // repeated server
}
