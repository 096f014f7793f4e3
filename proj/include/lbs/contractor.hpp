#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lbs/graph.hpp"
#include "lbs/rational.hpp"

namespace lbs {

// Ordered list of matchings whose labeled multiset union is the host
// graph's edge multiset. The host simple graph is the support; an edge pair
// may appear in several matchings. Empty matchings are not allowed.
struct MatchingDecomposition {
  std::vector<Matching> matchings;

  int num_matchings() const { return static_cast<int>(matchings.size()); }
  long long labeled_edge_count() const;
  // Sorted distinct edges appearing in any matching.
  std::vector<Edge> support() const;
  // True when every support edge occurs in exactly one matching.
  bool duplicate_free() const;
};

// Family of k-subsets of {1..2k} with pairwise intersections at most
// pair_bound. Sets are stored as bitmasks with bit p-1 standing for
// element p.
struct SetFamily {
  int k = 0;
  int pair_bound = 0;
  std::vector<std::uint64_t> sets;

  int size() const { return static_cast<int>(sets.size()); }
  std::vector<int> elements(int i) const;
  // Validates sizes, range, distinctness, and the pairwise bound.
  void check() const;
};

struct ContractorCertificate {
  // min over matchings of |M_i| / |external neighborhood of L(M_i)|;
  // nullopt when every external neighborhood is empty (unboundedly good).
  std::optional<Rat> alpha_achieved;
  // (|M_i|, |N_{G \ M_i}(L(M_i))|) per matching, in decomposition order.
  std::vector<std::pair<int, int>> per_matching;
};

struct VerifyResult {
  bool passes = false;
  ContractorCertificate certificate;
};

// Checks the contraction property at alpha: for every matching, the
// neighborhood of its left endpoints in the labeled multiset union minus
// that matching's own copies has size at most |M_i|/alpha. The
// decomposition must be supported exactly on the host's edge set.
VerifyResult verify(const BipartiteGraph& g, const MatchingDecomposition& d,
                    const Rat& alpha);

struct Construction {
  BipartiteGraph graph;
  MatchingDecomposition decomposition;
};

// String-indexed construction: clients are the w^{2k} strings over a
// w-letter alphabet of length 2k, servers the w^k strings of length k. For
// each family set S (one round), every client v gains the edge (v, v_S)
// where v_S restricts v to the positions in S; the round splits into w^k
// matchings, one per fixation x of the complementary positions.
//
// Vertex encoding is bit-exact: a string is read as a base-w number, most
// significant digit first, with alphabet letters 1..w mapped to digits
// 0..w-1.
Construction construct(int w, int k, const SetFamily& family,
                       long long max_clients = 1 << 20);

// Sum over j != i of w^{|S_i and S_j|}; an exact upper bound on the i-th
// round's external neighborhood sizes.
long long intersection_bound(const SetFamily& family, int w, int i);

class FamilyGenError : public std::runtime_error {
 public:
  FamilyGenError(const std::string& what, SetFamily best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const SetFamily& best() const { return best_; }

 private:
  SetFamily best_;
};

// Rejection sampling of target_t distinct k-subsets of [2k] with pairwise
// intersections at most floor((1-delta)k). The whole family is resampled on
// any violation; greedy mode instead keeps compatible sets one at a time.
// Throws FamilyGenError (carrying the best family found) after max_attempts.
SetFamily gen_set_family(int k, const Rat& delta, int target_t,
                         std::uint64_t seed, long long max_attempts = 10000,
                         bool greedy = false);

struct SizeGroup {
  int r0 = 0;
  MatchingDecomposition kept;
};

// Buckets matchings by size into powers of 4/3 and keeps the bucket with
// the most edges; every kept size lies in [r0, (4/3)·r0).
SizeGroup group_by_size(const MatchingDecomposition& d);

// Converts a verified contractor into a graph whose matchings are induced
// and of one common power-of-two size: per matching, drop the edges
// touching its external neighborhood, round the size down to a power of
// two, then keep the size class with the most edges.
Construction to_rs_graph(const BipartiteGraph& g,
                         const MatchingDecomposition& d, const Rat& alpha);

// True iff for every matching, the output graph has no edge between its
// left and right endpoints other than the matching's own.
bool matchings_induced(const BipartiteGraph& g,
                       const MatchingDecomposition& d);

// Witness file format:
//   mc <n_left> <n_right> <k>
//   m <size>
//   <client> <server>      (size lines, ascending client)
//   ...
void write_witness(std::ostream& out, const BipartiteGraph& g,
                   const MatchingDecomposition& d);
Construction read_witness(std::istream& in);

}  // namespace lbs
