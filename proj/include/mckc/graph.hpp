#pragma once

#include <vector>

#include "mckc/instance.hpp"

namespace mckc {

/// Bipartite connectivity graph at a radius guess: facilities on one side,
/// clients on the other, edge iff d(i,j) <= radius (inclusive).  G is the
/// immutable build-time graph; a deletion mask carries the working graph H
/// that the decompositions shrink.
class ThresholdGraph {
 public:
  ThresholdGraph(const MckcInstance& inst, const Rat& radius);

  const MckcInstance& instance() const { return *inst_; }
  const Rat& radius() const { return radius_; }
  int num_vertices() const { return int(adj_.size()); }
  bool is_facility(int v) const { return v < inst_->num_facilities(); }
  bool is_client(int v) const { return !is_facility(v); }

  const std::vector<int>& neighbors_g(int v) const { return adj_[v]; }
  bool alive(int v) const { return alive_[v]; }
  void remove(int v) { alive_[v] = false; }
  void reset_mask() { alive_.assign(alive_.size(), true); }

  std::vector<int> alive_clients() const;
  /// Surviving G-neighbors of v (the H adjacency).
  std::vector<int> neighbors_h(int v) const;

  /// BFS layers in H from v: `inside` = hop distance < t, `frontier` = hop
  /// distance exactly t.  v must be alive.
  struct Layered {
    std::vector<int> inside;
    std::vector<int> frontier;
  };
  Layered layered_neighborhood(int v, int t) const;

  /// Hop distances in H from v (-1 = unreachable).
  std::vector<int> hop_distances_h(int v) const;
  /// Hop distances in the full graph G, ignoring the mask.
  std::vector<int> hop_distances_g(int v) const;

  /// Max pairwise hop distance within S, measured in G; -1 encodes infinity
  /// (disconnected pair).  S must be nonempty.
  int hop_diameter_g(const std::vector<int>& S) const;

 private:
  const MckcInstance* inst_;
  Rat radius_;
  std::vector<std::vector<int>> adj_;
  std::vector<bool> alive_;
};

}  // namespace mckc
