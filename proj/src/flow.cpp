#include "mckc/flow.hpp"

#include <limits>
#include <queue>

namespace mckc {

MaxFlow::MaxFlow(int num_nodes) : adj_(num_nodes) {}

int MaxFlow::add_edge(int from, int to, std::int64_t capacity) {
  adj_[from].push_back({to, capacity, int(adj_[to].size())});
  adj_[to].push_back({from, 0, int(adj_[from].size()) - 1});
  handles_.emplace_back(from, int(adj_[from].size()) - 1);
  original_cap_.push_back(capacity);
  return int(handles_.size()) - 1;
}

bool MaxFlow::bfs(int s, int t) {
  level_.assign(adj_.size(), -1);
  std::queue<int> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const Edge& e : adj_[v]) {
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[t] >= 0;
}

std::int64_t MaxFlow::dfs(int v, int t, std::int64_t pushed) {
  if (v == t) return pushed;
  for (int& i = iter_[v]; i < int(adj_[v].size()); ++i) {
    Edge& e = adj_[v][i];
    if (e.cap > 0 && level_[v] < level_[e.to]) {
      std::int64_t got = dfs(e.to, t, std::min(pushed, e.cap));
      if (got > 0) {
        e.cap -= got;
        adj_[e.to][e.rev].cap += got;
        return got;
      }
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(int source, int sink) {
  std::int64_t total = 0;
  while (bfs(source, sink)) {
    iter_.assign(adj_.size(), 0);
    while (std::int64_t f = dfs(source, sink, std::numeric_limits<std::int64_t>::max()))
      total += f;
  }
  return total;
}

std::int64_t MaxFlow::flow_on(int edge_handle) const {
  auto [v, idx] = handles_[edge_handle];
  return original_cap_[edge_handle] - adj_[v][idx].cap;
}

}  // namespace mckc
