#include "lbs/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "lbs/errors.hpp"

namespace lbs {

namespace {

constexpr int kUnmatched = -1;

// Hopcroft-Karp over the clients listed in `active`.
class HopcroftKarp {
 public:
  HopcroftKarp(const BipartiteGraph& g, const std::vector<int>& active)
      : g_(g),
        active_(active),
        match_left_(g.num_clients(), kUnmatched),
        match_right_(g.num_servers(), kUnmatched),
        dist_(g.num_clients(), 0) {}

  int run() {
    int total = 0;
    while (bfs()) {
      for (int c : active_)
        if (match_left_[c] == kUnmatched && dfs(c)) total++;
    }
    return total;
  }

  Matching matching() const {
    std::vector<Edge> pairs;
    for (int c : active_)
      if (match_left_[c] != kUnmatched)
        pairs.push_back({c, match_left_[c]});
    return Matching(std::move(pairs));
  }

 private:
  bool bfs() {
    std::queue<int> q;
    for (int c : active_) {
      if (match_left_[c] == kUnmatched) {
        dist_[c] = 0;
        q.push(c);
      } else {
        dist_[c] = std::numeric_limits<int>::max();
      }
    }
    bool found = false;
    while (!q.empty()) {
      int c = q.front();
      q.pop();
      for (int s : g_.neighbors(c)) {
        int next = match_right_[s];
        if (next == kUnmatched) {
          found = true;
        } else if (dist_[next] == std::numeric_limits<int>::max()) {
          dist_[next] = dist_[c] + 1;
          q.push(next);
        }
      }
    }
    return found;
  }

  bool dfs(int c) {
    for (int s : g_.neighbors(c)) {
      int next = match_right_[s];
      if (next == kUnmatched ||
          (dist_[next] == dist_[c] + 1 && dfs(next))) {
        match_left_[c] = s;
        match_right_[s] = c;
        return true;
      }
    }
    dist_[c] = std::numeric_limits<int>::max();
    return false;
  }

  const BipartiteGraph& g_;
  const std::vector<int>& active_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> dist_;
};

}  // namespace

Matching max_matching(const BipartiteGraph& g, const std::vector<int>& x) {
  std::vector<int> active = checked_client_set(g, x);
  HopcroftKarp hk(g, active);
  hk.run();
  return hk.matching();
}

Matching max_matching(const BipartiteGraph& g) {
  return max_matching(g, all_clients(g));
}

bool is_matchable(const BipartiteGraph& g, const std::vector<int>& x) {
  std::vector<int> active = checked_client_set(g, x);
  HopcroftKarp hk(g, active);
  return hk.run() == static_cast<int>(active.size());
}

int maximum_matching_size(const BipartiteGraph& g) {
  std::vector<int> active = all_clients(g);
  HopcroftKarp hk(g, active);
  return hk.run();
}

Matching lexmin_saturating_matching(const BipartiteGraph& g,
                                    const std::vector<int>& x) {
  std::vector<int> clients = checked_client_set(g, x);
  if (!is_matchable(g, clients))
    throw InputError("client set is not matchable");

  // Greedy by client index: commit the smallest server that keeps the rest
  // of X saturable. Committed servers are excluded via a per-client filter.
  std::vector<bool> server_used(g.num_servers(), false);
  std::vector<Edge> chosen;
  for (std::size_t i = 0; i < clients.size(); ++i) {
    int c = clients[i];
    std::vector<int> rest(clients.begin() + i + 1, clients.end());
    bool done = false;
    for (int s : g.neighbors(c)) {
      if (server_used[s]) continue;
      // Remaining clients must be matchable avoiding all committed servers
      // and s.
      server_used[s] = true;
      std::vector<Edge> residual;
      for (int rc : rest)
        for (int rs : g.neighbors(rc))
          if (!server_used[rs]) residual.push_back({rc, rs});
      BipartiteGraph rg(g.num_clients(), g.num_servers(),
                        std::move(residual));
      if (is_matchable(rg, rest)) {
        chosen.push_back({c, s});
        done = true;
        break;
      }
      server_used[s] = false;
    }
    if (!done) throw InputError("client set is not matchable");
  }
  return Matching(std::move(chosen));
}

}  // namespace lbs
