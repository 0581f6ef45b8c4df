#pragma once

#include <cstdint>
#include <vector>

namespace mckc {

/// Dinic max-flow on integer capacities.  Small and dense-graph friendly;
/// everything in this project is desk scale.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);

  /// Returns an edge handle usable with flow_on() after run().
  int add_edge(int from, int to, std::int64_t capacity);

  std::int64_t run(int source, int sink);

  std::int64_t flow_on(int edge_handle) const;

 private:
  struct Edge {
    int to;
    std::int64_t cap;
    int rev;
  };
  bool bfs(int s, int t);
  std::int64_t dfs(int v, int t, std::int64_t pushed);

  std::vector<std::vector<Edge>> adj_;
  std::vector<std::pair<int, int>> handles_;
  std::vector<std::int64_t> original_cap_;
  std::vector<int> level_, iter_;
};

/// Hopcroft-style augmenting-path bipartite matching via MaxFlow would be
/// overkill; the callers all use MaxFlow directly with unit/weighted nodes.

}  // namespace mckc
