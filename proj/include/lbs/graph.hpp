#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lbs {

struct Edge {
  int client = 0;
  int server = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple bipartite graph between clients 0..num_clients()-1 and servers
// 0..num_servers()-1. Immutable after construction; edges are stored sorted
// by (client, server) with duplicates rejected.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(int n_left, int n_right, std::vector<Edge> edges);

  int num_clients() const { return n_left_; }
  int num_servers() const { return n_right_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  // Sorted servers adjacent to `client`.
  std::span<const int> neighbors(int client) const;
  int degree(int client) const;
  bool has_edge(int client, int server) const;

  // Bitmask of neighbors(client); requires num_servers() <= 64.
  std::uint64_t neighbor_mask(int client) const;

  // Same vertex sets and edge containment.
  bool is_subgraph_of(const BipartiteGraph& g) const;

  // Copy with the given edges removed (missing edges are ignored).
  BipartiteGraph without_edges(const std::vector<Edge>& removed) const;

  // Union on identical vertex sets.
  static BipartiteGraph union_of(const BipartiteGraph& a,
                                 const BipartiteGraph& b);

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.n_left_ == b.n_left_ && a.n_right_ == b.n_right_ &&
           a.edges_ == b.edges_;
  }

 private:
  int n_left_ = 0;
  int n_right_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> adj_offsets_{0};
  std::vector<int> adj_;
};

// A set of vertex-disjoint edges, sorted by client.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<Edge> pairs);

  int size() const { return static_cast<int>(pairs_.size()); }
  bool empty() const { return pairs_.empty(); }
  const std::vector<Edge>& pairs() const { return pairs_; }

  std::vector<int> left_vertices() const;
  std::vector<int> right_vertices() const;
  std::optional<int> server_of(int client) const;
  bool contains(const Edge& e) const;

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.pairs_ == b.pairs_;
  }

 private:
  std::vector<Edge> pairs_;
};

// Partial map client -> server; -1 marks unassigned clients. The domain is
// the set of assigned clients.
struct Assignment {
  std::vector<int> server_of;  // size = host num_clients()
  int num_servers = 0;

  std::vector<int> domain() const;
  int domain_size() const;
  bool valid_on(const BipartiteGraph& g) const;
};

// Validates that `clients` are in-range, distinct indices of g and returns
// them sorted. Throws InputError otherwise.
std::vector<int> checked_client_set(const BipartiteGraph& g,
                                    const std::vector<int>& clients);

std::vector<int> all_clients(const BipartiteGraph& g);

// Sorted distinct servers adjacent to any client in X.
std::vector<int> neighborhood(const BipartiteGraph& g,
                              const std::vector<int>& clients);

}  // namespace lbs
