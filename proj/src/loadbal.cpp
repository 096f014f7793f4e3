#include "lbs/loadbal.hpp"

#include <algorithm>
#include <string>

#include "lbs/errors.hpp"
#include "lbs/flow.hpp"
#include "lbs/rational.hpp"

namespace lbs {

std::optional<int> optload(const BipartiteGraph& g,
                           const std::vector<int>& x) {
  std::vector<int> clients = checked_client_set(g, x);
  if (clients.empty()) return 0;
  for (int c : clients)
    if (g.degree(c) == 0) return std::nullopt;
  int lo = 1, hi = static_cast<int>(clients.size());
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (feasible_load(g, clients, mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

std::optional<int> optload_hall(const BipartiteGraph& g,
                                const std::vector<int>& x) {
  std::vector<int> clients = checked_client_set(g, x);
  if (clients.size() > 20)
    throw InputError("optload_hall is capped at 20 clients, got " +
                     std::to_string(clients.size()));
  if (clients.empty()) return 0;

  int n = static_cast<int>(clients.size());
  // Mark-array union with undo so each subset's neighborhood count is
  // maintained incrementally along the recursion.
  std::vector<int> mark(g.num_servers(), 0);
  std::vector<int> undo;
  long long best = 0;
  bool isolated_subset = false;

  auto visit = [&](auto&& self, int idx, int size, int nbrs) -> void {
    if (idx == n) {
      if (size == 0) return;
      if (nbrs == 0) {
        isolated_subset = true;
        return;
      }
      best = std::max(best, ceil_div(size, nbrs));
      return;
    }
    self(self, idx + 1, size, nbrs);
    std::size_t undo_base = undo.size();
    int added = 0;
    for (int s : g.neighbors(clients[idx])) {
      if (!mark[s]) {
        mark[s] = 1;
        undo.push_back(s);
        added++;
      }
    }
    self(self, idx + 1, size + 1, nbrs + added);
    while (undo.size() > undo_base) {
      mark[undo.back()] = 0;
      undo.pop_back();
    }
  };
  visit(visit, 0, 0, 0);
  if (isolated_subset) return std::nullopt;
  return static_cast<int>(best);
}

Assignment optimal_assignment(const BipartiteGraph& g,
                              const std::vector<int>& x) {
  std::optional<int> opt = optload(g, x);
  if (!opt)
    throw InputError("client set contains an isolated client; no assignment");
  if (*opt == 0) {
    Assignment a;
    a.server_of.assign(g.num_clients(), -1);
    a.num_servers = g.num_servers();
    return a;
  }
  std::optional<Assignment> a = assignment_with_load(g, x, *opt);
  return *a;
}

int load_of(const Assignment& a, int server) {
  int n = 0;
  for (int s : a.server_of) n += (s == server);
  return n;
}

int max_load(const Assignment& a) {
  std::vector<int> loads(a.num_servers, 0);
  int best = 0;
  for (int s : a.server_of)
    if (s >= 0) best = std::max(best, ++loads[s]);
  return best;
}

}  // namespace lbs
