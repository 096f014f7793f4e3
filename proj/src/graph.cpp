#include "lbs/graph.hpp"

#include <algorithm>
#include <string>

#include "lbs/errors.hpp"

namespace lbs {

BipartiteGraph::BipartiteGraph(int n_left, int n_right,
                               std::vector<Edge> edges)
    : n_left_(n_left), n_right_(n_right), edges_(std::move(edges)) {
  if (n_left < 0 || n_right < 0)
    throw InputError("negative vertex count");
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.client < 0 || e.client >= n_left_ || e.server < 0 ||
        e.server >= n_right_)
      throw InputError("edge (" + std::to_string(e.client) + "," +
                       std::to_string(e.server) + ") out of range");
    if (i > 0 && edges_[i - 1] == e)
      throw InputError("duplicate edge (" + std::to_string(e.client) + "," +
                       std::to_string(e.server) + ")");
  }
  adj_offsets_.assign(n_left_ + 1, 0);
  for (const Edge& e : edges_) adj_offsets_[e.client + 1]++;
  for (int c = 0; c < n_left_; ++c) adj_offsets_[c + 1] += adj_offsets_[c];
  adj_.reserve(edges_.size());
  for (const Edge& e : edges_) adj_.push_back(e.server);
}

std::span<const int> BipartiteGraph::neighbors(int client) const {
  if (client < 0 || client >= n_left_)
    throw InputError("client index " + std::to_string(client) +
                     " out of range");
  return {adj_.data() + adj_offsets_[client],
          adj_.data() + adj_offsets_[client + 1]};
}

int BipartiteGraph::degree(int client) const {
  return static_cast<int>(neighbors(client).size());
}

bool BipartiteGraph::has_edge(int client, int server) const {
  return std::binary_search(edges_.begin(), edges_.end(),
                            Edge{client, server});
}

std::uint64_t BipartiteGraph::neighbor_mask(int client) const {
  if (n_right_ > 64) throw InputError("neighbor_mask needs <= 64 servers");
  std::uint64_t m = 0;
  for (int s : neighbors(client)) m |= std::uint64_t{1} << s;
  return m;
}

bool BipartiteGraph::is_subgraph_of(const BipartiteGraph& g) const {
  if (n_left_ != g.n_left_ || n_right_ != g.n_right_) return false;
  return std::includes(g.edges_.begin(), g.edges_.end(), edges_.begin(),
                       edges_.end());
}

BipartiteGraph BipartiteGraph::without_edges(
    const std::vector<Edge>& removed) const {
  std::vector<Edge> sorted_removed = removed;
  std::sort(sorted_removed.begin(), sorted_removed.end());
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  std::set_difference(edges_.begin(), edges_.end(), sorted_removed.begin(),
                      sorted_removed.end(), std::back_inserter(kept));
  return BipartiteGraph(n_left_, n_right_, std::move(kept));
}

BipartiteGraph BipartiteGraph::union_of(const BipartiteGraph& a,
                                        const BipartiteGraph& b) {
  if (a.n_left_ != b.n_left_ || a.n_right_ != b.n_right_)
    throw InputError("union of graphs on different vertex sets");
  std::vector<Edge> merged;
  merged.reserve(a.edges_.size() + b.edges_.size());
  std::set_union(a.edges_.begin(), a.edges_.end(), b.edges_.begin(),
                 b.edges_.end(), std::back_inserter(merged));
  return BipartiteGraph(a.n_left_, a.n_right_, std::move(merged));
}

Matching::Matching(std::vector<Edge> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  std::vector<int> servers;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i > 0 && pairs_[i - 1].client == pairs_[i].client)
      throw InputError("matching repeats client " +
                       std::to_string(pairs_[i].client));
    servers.push_back(pairs_[i].server);
  }
  std::sort(servers.begin(), servers.end());
  if (std::adjacent_find(servers.begin(), servers.end()) != servers.end())
    throw InputError("matching repeats a server");
}

std::vector<int> Matching::left_vertices() const {
  std::vector<int> out;
  out.reserve(pairs_.size());
  for (const Edge& e : pairs_) out.push_back(e.client);
  return out;
}

std::vector<int> Matching::right_vertices() const {
  std::vector<int> out;
  out.reserve(pairs_.size());
  for (const Edge& e : pairs_) out.push_back(e.server);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<int> Matching::server_of(int client) const {
  auto it = std::lower_bound(
      pairs_.begin(), pairs_.end(), client,
      [](const Edge& e, int c) { return e.client < c; });
  if (it != pairs_.end() && it->client == client) return it->server;
  return std::nullopt;
}

bool Matching::contains(const Edge& e) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), e);
}

std::vector<int> Assignment::domain() const {
  std::vector<int> out;
  for (std::size_t c = 0; c < server_of.size(); ++c)
    if (server_of[c] >= 0) out.push_back(static_cast<int>(c));
  return out;
}

int Assignment::domain_size() const {
  int n = 0;
  for (int s : server_of) n += (s >= 0);
  return n;
}

bool Assignment::valid_on(const BipartiteGraph& g) const {
  if (static_cast<int>(server_of.size()) != g.num_clients()) return false;
  if (num_servers != g.num_servers()) return false;
  for (std::size_t c = 0; c < server_of.size(); ++c) {
    int s = server_of[c];
    if (s < -1 || s >= g.num_servers()) return false;
    if (s >= 0 && !g.has_edge(static_cast<int>(c), s)) return false;
  }
  return true;
}

std::vector<int> checked_client_set(const BipartiteGraph& g,
                                    const std::vector<int>& clients) {
  std::vector<int> x = clients;
  std::sort(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= g.num_clients())
      throw InputError("client index " + std::to_string(x[i]) +
                       " out of range");
    if (i > 0 && x[i - 1] == x[i])
      throw InputError("client set repeats index " + std::to_string(x[i]));
  }
  return x;
}

std::vector<int> all_clients(const BipartiteGraph& g) {
  std::vector<int> x(g.num_clients());
  for (int c = 0; c < g.num_clients(); ++c) x[c] = c;
  return x;
}

std::vector<int> neighborhood(const BipartiteGraph& g,
                              const std::vector<int>& clients) {
  std::vector<int> out;
  for (int c : clients)
    for (int s : g.neighbors(c)) out.push_back(s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace lbs
