#include "lbs/contractor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "lbs/errors.hpp"
#include "lbs/rng.hpp"

namespace lbs {

long long MatchingDecomposition::labeled_edge_count() const {
  long long n = 0;
  for (const Matching& m : matchings) n += m.size();
  return n;
}

std::vector<Edge> MatchingDecomposition::support() const {
  std::vector<Edge> edges;
  for (const Matching& m : matchings)
    edges.insert(edges.end(), m.pairs().begin(), m.pairs().end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

bool MatchingDecomposition::duplicate_free() const {
  return labeled_edge_count() ==
         static_cast<long long>(support().size());
}

std::vector<int> SetFamily::elements(int i) const {
  std::vector<int> out;
  for (int p = 0; p < 64; ++p)
    if (sets[i] >> p & 1) out.push_back(p + 1);
  return out;
}

void SetFamily::check() const {
  if (k < 2) throw InputError("set family needs k >= 2");
  std::uint64_t universe =
      (2 * k == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * k)) - 1;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i] & ~universe)
      throw InputError("family set outside {1..2k}");
    if (std::popcount(sets[i]) != k)
      throw InputError("family set is not a k-subset");
    for (std::size_t j = 0; j < i; ++j) {
      if (sets[i] == sets[j]) throw InputError("family sets must be distinct");
      if (std::popcount(sets[i] & sets[j]) > pair_bound)
        throw InputError("family violates its pairwise intersection bound");
    }
  }
}

namespace {

// Per-client labeled incidence: (matching index, server) per labeled edge.
std::vector<std::vector<std::pair<int, int>>> labeled_incidence(
    const BipartiteGraph& g, const MatchingDecomposition& d) {
  std::vector<std::vector<std::pair<int, int>>> inc(g.num_clients());
  for (int i = 0; i < d.num_matchings(); ++i)
    for (const Edge& e : d.matchings[i].pairs())
      inc[e.client].push_back({i, e.server});
  return inc;
}

void check_decomposition(const BipartiteGraph& g,
                         const MatchingDecomposition& d) {
  for (const Matching& m : d.matchings) {
    if (m.empty())
      throw InputError("decomposition contains an empty matching");
    for (const Edge& e : m.pairs())
      if (e.client < 0 || e.client >= g.num_clients() || e.server < 0 ||
          e.server >= g.num_servers() || !g.has_edge(e.client, e.server))
        throw InputError("decomposition edge not in host graph");
  }
  if (d.support() != g.edges())
    throw InputError("decomposition does not cover every host edge");
}

}  // namespace

VerifyResult verify(const BipartiteGraph& g, const MatchingDecomposition& d,
                    const Rat& alpha) {
  check_decomposition(g, d);
  auto inc = labeled_incidence(g, d);

  VerifyResult res;
  res.passes = true;
  std::vector<int> stamp(g.num_servers(), -1);
  for (int i = 0; i < d.num_matchings(); ++i) {
    const Matching& m = d.matchings[i];
    int external = 0;
    for (const Edge& e : m.pairs()) {
      for (const auto& [j, s] : inc[e.client]) {
        if (j == i) continue;
        if (stamp[s] != i) {
          stamp[s] = i;
          external++;
        }
      }
    }
    res.certificate.per_matching.push_back({m.size(), external});
    if (external > 0) {
      Rat ratio(m.size(), external);
      if (!res.certificate.alpha_achieved ||
          ratio < *res.certificate.alpha_achieved)
        res.certificate.alpha_achieved = ratio;
      if (Rat(external) * alpha > Rat(m.size())) res.passes = false;
    }
  }
  return res;
}

namespace {

long long checked_pow(int w, int e, long long cap) {
  long long v = 1;
  for (int i = 0; i < e; ++i) {
    if (v > cap / w) return -1;
    v *= w;
  }
  return v;
}

}  // namespace

Construction construct(int w, int k, const SetFamily& family,
                       long long max_clients) {
  if (w < 2 || k < 2) throw InputError("construction needs w >= 2, k >= 2");
  if (family.k != k) throw InputError("family k does not match");
  family.check();

  long long n_left = checked_pow(w, 2 * k, max_clients);
  if (n_left < 0)
    throw InputError("w^(2k) exceeds the configured client budget of " +
                     std::to_string(max_clients));
  long long n_right = checked_pow(w, k, max_clients);
  int t = family.size();

  // Powers of w for digit extraction, MSB first over 2k positions.
  std::vector<long long> pow_w(2 * k + 1, 1);
  for (int i = 1; i <= 2 * k; ++i) pow_w[i] = pow_w[i - 1] * w;

  MatchingDecomposition decomp;
  decomp.matchings.reserve(static_cast<std::size_t>(t) * n_right);
  std::vector<Edge> support;
  support.reserve(static_cast<std::size_t>(t) * n_left);

  std::vector<int> digits(2 * k);
  std::vector<std::vector<Edge>> buckets(n_right);
  for (int i = 0; i < t; ++i) {
    std::vector<int> in_set;   // positions of S_i, ascending (0-based)
    std::vector<int> out_set;  // complement positions, ascending
    for (int p = 0; p < 2 * k; ++p)
      (family.sets[i] >> p & 1 ? in_set : out_set).push_back(p);

    for (auto& b : buckets) b.clear();
    for (long long v = 0; v < n_left; ++v) {
      for (int p = 0; p < 2 * k; ++p)
        digits[p] = static_cast<int>(v / pow_w[2 * k - 1 - p] % w);
      long long server = 0;
      for (int p : in_set) server = server * w + digits[p];
      long long group = 0;
      for (int p : out_set) group = group * w + digits[p];
      buckets[group].push_back(
          {static_cast<int>(v), static_cast<int>(server)});
      support.push_back({static_cast<int>(v), static_cast<int>(server)});
    }
    for (long long x = 0; x < n_right; ++x)
      decomp.matchings.push_back(Matching(buckets[x]));
  }

  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  BipartiteGraph g(static_cast<int>(n_left), static_cast<int>(n_right),
                   std::move(support));
  return {std::move(g), std::move(decomp)};
}

long long intersection_bound(const SetFamily& family, int w, int i) {
  if (i < 0 || i >= family.size())
    throw InputError("family index out of range");
  long long total = 0;
  for (int j = 0; j < family.size(); ++j) {
    if (j == i) continue;
    int inter = std::popcount(family.sets[i] & family.sets[j]);
    long long term = 1;
    for (int e = 0; e < inter; ++e) term *= w;
    total += term;
  }
  return total;
}

namespace {

std::uint64_t sample_k_subset(std::mt19937_64& g, int k) {
  // Partial Fisher-Yates over 1..2k; the first k drawn elements form the set.
  std::vector<int> pool(2 * k);
  for (int i = 0; i < 2 * k; ++i) pool[i] = i;
  std::uint64_t mask = 0;
  for (int i = 0; i < k; ++i) {
    int j = i + rng::uniform_int(g, 2 * k - i);
    std::swap(pool[i], pool[j]);
    mask |= std::uint64_t{1} << pool[i];
  }
  return mask;
}

bool compatible(const std::vector<std::uint64_t>& sets, std::uint64_t cand,
                int bound) {
  for (std::uint64_t s : sets)
    if (std::popcount(s & cand) > bound) return false;
  return true;
}

// Longest prefix of `drawn` that is pairwise compatible, kept greedily.
std::vector<std::uint64_t> greedy_prefix(
    const std::vector<std::uint64_t>& drawn, int bound) {
  std::vector<std::uint64_t> kept;
  for (std::uint64_t s : drawn)
    if (compatible(kept, s, bound)) kept.push_back(s);
  return kept;
}

}  // namespace

SetFamily gen_set_family(int k, const Rat& delta, int target_t,
                         std::uint64_t seed, long long max_attempts,
                         bool greedy) {
  if (k < 2 || 2 * k > 63) throw InputError("need 2 <= k <= 31");
  if (delta <= 0 || delta >= Rat(1, 2))
    throw InputError("delta must lie in (0, 1/2)");
  if (target_t < 1) throw InputError("target_t must be >= 1");
  if (max_attempts < 1) throw InputError("max_attempts must be >= 1");

  // floor((1-delta) * k), exactly.
  Rat bound_rat = (Rat(1) - delta) * k;
  int bound = static_cast<int>(
      BigInt(numerator(bound_rat) / denominator(bound_rat))
          .convert_to<long long>());

  std::mt19937_64 g = rng::engine(seed);
  SetFamily best{k, bound, {}};

  if (greedy) {
    std::vector<std::uint64_t> kept;
    for (long long attempt = 0; attempt < max_attempts; ++attempt) {
      std::uint64_t cand = sample_k_subset(g, k);
      if (compatible(kept, cand, bound)) kept.push_back(cand);
      if (static_cast<int>(kept.size()) == target_t)
        return SetFamily{k, bound, kept};
    }
    best.sets = kept;
    throw FamilyGenError("greedy family generation did not reach " +
                             std::to_string(target_t) + " sets",
                         best);
  }

  for (long long attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<std::uint64_t> drawn;
    drawn.reserve(target_t);
    for (int i = 0; i < target_t; ++i) drawn.push_back(sample_k_subset(g, k));
    bool ok = true;
    for (std::size_t i = 0; i < drawn.size() && ok; ++i)
      for (std::size_t j = i + 1; j < drawn.size() && ok; ++j)
        if (std::popcount(drawn[i] & drawn[j]) > bound) ok = false;
    if (ok) return SetFamily{k, bound, drawn};
    std::vector<std::uint64_t> prefix = greedy_prefix(drawn, bound);
    if (prefix.size() > best.sets.size()) best.sets = prefix;
  }
  throw FamilyGenError("family generation failed after " +
                           std::to_string(max_attempts) + " attempts",
                       best);
}

namespace {

// Largest j with (4/3)^j <= s, via exact integer comparisons.
int size_bucket(int s) {
  int j = 0;
  unsigned __int128 p4 = 4, p3 = 3;  // (4/3)^(j+1)
  while (p4 <= static_cast<unsigned __int128>(s) * p3) {
    ++j;
    p4 *= 4;
    p3 *= 3;
  }
  return j;
}

}  // namespace

SizeGroup group_by_size(const MatchingDecomposition& d) {
  if (d.matchings.empty())
    throw InputError("group_by_size needs a nonempty decomposition");
  std::map<int, long long> bucket_edges;
  for (const Matching& m : d.matchings) {
    if (m.empty())
      throw InputError("decomposition contains an empty matching");
    bucket_edges[size_bucket(m.size())] += m.size();
  }
  // Most edges wins; ties to the bucket with larger sizes.
  int winner = -1;
  long long winner_edges = -1;
  for (const auto& [j, edges] : bucket_edges) {
    if (edges > winner_edges || (edges == winner_edges && j > winner)) {
      winner = j;
      winner_edges = edges;
    }
  }
  SizeGroup out;
  int r0 = 0;
  for (const Matching& m : d.matchings) {
    if (size_bucket(m.size()) != winner) continue;
    out.kept.matchings.push_back(m);
    if (r0 == 0 || m.size() < r0) r0 = m.size();
  }
  out.r0 = r0;
  return out;
}

Construction to_rs_graph(const BipartiteGraph& g,
                         const MatchingDecomposition& d, const Rat& alpha) {
  VerifyResult v = verify(g, d, alpha);
  if (!v.passes)
    throw InputError("decomposition does not verify at the given alpha");

  auto inc = labeled_incidence(g, d);
  std::vector<int> stamp(g.num_servers(), -1);
  std::vector<Matching> induced;
  for (int i = 0; i < d.num_matchings(); ++i) {
    // External neighborhood servers are the obstruction to inducedness.
    for (const Edge& e : d.matchings[i].pairs())
      for (const auto& [j, s] : inc[e.client])
        if (j != i) stamp[s] = i;
    std::vector<Edge> kept;
    for (const Edge& e : d.matchings[i].pairs())
      if (stamp[e.server] != i) kept.push_back(e);
    if (kept.empty()) continue;
    // Round down to a power of two, keeping the lowest-client edges.
    int r = std::bit_floor(static_cast<unsigned>(kept.size()));
    kept.resize(r);
    induced.push_back(Matching(std::move(kept)));
  }

  std::map<int, long long> class_edges;
  for (const Matching& m : induced)
    class_edges[m.size()] += m.size();
  int best_size = 0;
  long long best_edges = -1;
  for (const auto& [size, edges] : class_edges) {
    if (edges > best_edges || (edges == best_edges && size > best_size)) {
      best_size = size;
      best_edges = edges;
    }
  }

  Construction out;
  std::vector<Edge> support;
  for (const Matching& m : induced) {
    if (m.size() != best_size) continue;
    out.decomposition.matchings.push_back(m);
    support.insert(support.end(), m.pairs().begin(), m.pairs().end());
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  out.graph =
      BipartiteGraph(g.num_clients(), g.num_servers(), std::move(support));
  return out;
}

bool matchings_induced(const BipartiteGraph& g,
                       const MatchingDecomposition& d) {
  for (const Matching& m : d.matchings) {
    std::vector<int> left = m.left_vertices();
    std::vector<int> right = m.right_vertices();
    for (int c : left)
      for (int s : g.neighbors(c))
        if (std::binary_search(right.begin(), right.end(), s) &&
            !m.contains({c, s}))
          return false;
  }
  return true;
}

void write_witness(std::ostream& out, const BipartiteGraph& g,
                   const MatchingDecomposition& d) {
  out << "mc " << g.num_clients() << " " << g.num_servers() << " "
      << d.num_matchings() << "\n";
  for (const Matching& m : d.matchings) {
    out << "m " << m.size() << "\n";
    for (const Edge& e : m.pairs())
      out << e.client << " " << e.server << "\n";
  }
}

Construction read_witness(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
      if (!blank) return line;
    }
    throw ParseError(lineno + 1, "unexpected end of witness file");
  };

  std::istringstream head(next_line());
  std::string tag;
  int n_left = 0, n_right = 0, k = 0;
  if (!(head >> tag >> n_left >> n_right >> k) || tag != "mc")
    throw ParseError(lineno, "expected header: mc <n_left> <n_right> <k>");
  if (n_left < 0 || n_right < 0 || k < 0)
    throw ParseError(lineno, "negative counts in header");

  MatchingDecomposition d;
  for (int i = 0; i < k; ++i) {
    std::istringstream mh(next_line());
    int size = 0;
    if (!(mh >> tag >> size) || tag != "m" || size < 1)
      throw ParseError(lineno, "expected matching header: m <size>");
    std::vector<Edge> pairs;
    for (int e = 0; e < size; ++e) {
      std::istringstream el(next_line());
      Edge edge;
      std::string extra;
      if (!(el >> edge.client >> edge.server) || (el >> extra))
        throw ParseError(lineno, "expected edge line: <client> <server>");
      if (edge.client < 0 || edge.client >= n_left || edge.server < 0 ||
          edge.server >= n_right)
        throw ParseError(lineno, "edge endpoint out of range");
      pairs.push_back(edge);
    }
    try {
      d.matchings.push_back(Matching(std::move(pairs)));
    } catch (const InputError& err) {
      throw ParseError(lineno, err.what());
    }
  }
  BipartiteGraph g(n_left, n_right, d.support());
  return {std::move(g), std::move(d)};
}

}  // namespace lbs
