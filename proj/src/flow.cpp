#include "lbs/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "lbs/errors.hpp"

namespace lbs {

namespace {

struct Dinic {
  struct Arc {
    int to;
    int cap;
    int rev;
  };

  explicit Dinic(int n) : adj(n), level(n), iter(n) {}

  void add_arc(int from, int to, int cap) {
    adj[from].push_back({to, cap, static_cast<int>(adj[to].size())});
    adj[to].push_back({from, 0, static_cast<int>(adj[from].size()) - 1});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Arc& a : adj[v]) {
        if (a.cap > 0 && level[a.to] < 0) {
          level[a.to] = level[v] + 1;
          q.push(a.to);
        }
      }
    }
    return level[t] >= 0;
  }

  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (int& i = iter[v]; i < static_cast<int>(adj[v].size()); ++i) {
      Arc& a = adj[v][i];
      if (a.cap > 0 && level[v] < level[a.to]) {
        int d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0) {
          a.cap -= d;
          adj[a.to][a.rev].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  int max_flow(int s, int t) {
    int flow = 0;
    while (bfs(s, t)) {
      std::fill(iter.begin(), iter.end(), 0);
      int f;
      while ((f = dfs(s, t, std::numeric_limits<int>::max())) > 0) flow += f;
    }
    return flow;
  }

  std::vector<std::vector<Arc>> adj;
  std::vector<int> level;
  std::vector<int> iter;
};

// Nodes: 0 = source, 1..|X| = clients of X, then servers, then sink.
struct LoadNetwork {
  LoadNetwork(const BipartiteGraph& g, const std::vector<int>& x, int d)
      : clients(x),
        n_servers(g.num_servers()),
        sink(1 + static_cast<int>(x.size()) + g.num_servers()),
        dinic(2 + static_cast<int>(x.size()) + g.num_servers()) {
    for (std::size_t i = 0; i < clients.size(); ++i) {
      int cnode = 1 + static_cast<int>(i);
      dinic.add_arc(0, cnode, 1);
      for (int s : g.neighbors(clients[i]))
        dinic.add_arc(cnode, server_node(s), 1);
    }
    for (int s = 0; s < n_servers; ++s)
      dinic.add_arc(server_node(s), sink, d);
  }

  int server_node(int s) const {
    return 1 + static_cast<int>(clients.size()) + s;
  }

  bool saturates() { return dinic.max_flow(0, sink) ==
                            static_cast<int>(clients.size()); }

  std::vector<int> clients;
  int n_servers;
  int sink;
  Dinic dinic;
};

}  // namespace

bool feasible_load(const BipartiteGraph& g, const std::vector<int>& x,
                   int d) {
  if (d < 1) throw InputError("load bound must be >= 1");
  std::vector<int> clients = checked_client_set(g, x);
  if (clients.empty()) return true;
  LoadNetwork net(g, clients, d);
  return net.saturates();
}

std::optional<Assignment> assignment_with_load(const BipartiteGraph& g,
                                               const std::vector<int>& x,
                                               int d) {
  if (d < 1) throw InputError("load bound must be >= 1");
  std::vector<int> clients = checked_client_set(g, x);
  Assignment a;
  a.server_of.assign(g.num_clients(), -1);
  a.num_servers = g.num_servers();
  if (clients.empty()) return a;
  LoadNetwork net(g, clients, d);
  if (!net.saturates()) return std::nullopt;
  for (std::size_t i = 0; i < clients.size(); ++i) {
    int cnode = 1 + static_cast<int>(i);
    for (const Dinic::Arc& arc : net.dinic.adj[cnode]) {
      // Saturated client->server arc carries the assignment.
      if (arc.to != 0 && arc.cap == 0) {
        a.server_of[clients[i]] =
            arc.to - 1 - static_cast<int>(clients.size());
        break;
      }
    }
  }
  return a;
}

}  // namespace lbs
