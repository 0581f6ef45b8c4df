#include "mckc/graph.hpp"

#include <queue>
#include <stdexcept>

namespace mckc {

ThresholdGraph::ThresholdGraph(const MckcInstance& inst, const Rat& radius)
    : inst_(&inst), radius_(radius) {
  if (radius < Rat(0)) throw std::invalid_argument("threshold graph: negative radius");
  adj_.resize(inst.num_vertices());
  alive_.assign(inst.num_vertices(), true);
  for (int i = 0; i < inst.num_facilities(); ++i)
    for (int j = 0; j < inst.num_clients(); ++j) {
      const Dist& d = inst.dist_fc(i, j);
      if (!d.is_infinite() && d.value() <= radius) {
        adj_[i].push_back(inst.client_vertex(j));
        adj_[inst.client_vertex(j)].push_back(i);
      }
    }
}

std::vector<int> ThresholdGraph::alive_clients() const {
  std::vector<int> out;
  for (int v = inst_->num_facilities(); v < num_vertices(); ++v)
    if (alive_[v]) out.push_back(v);
  return out;
}

std::vector<int> ThresholdGraph::neighbors_h(int v) const {
  std::vector<int> out;
  for (int u : adj_[v])
    if (alive_[u]) out.push_back(u);
  return out;
}

std::vector<int> ThresholdGraph::hop_distances_h(int v) const {
  if (!alive_[v]) throw std::invalid_argument("BFS from deleted vertex");
  std::vector<int> dist(num_vertices(), -1);
  std::queue<int> q;
  dist[v] = 0;
  q.push(v);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : adj_[u])
      if (alive_[w] && dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

std::vector<int> ThresholdGraph::hop_distances_g(int v) const {
  std::vector<int> dist(num_vertices(), -1);
  std::queue<int> q;
  dist[v] = 0;
  q.push(v);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : adj_[u])
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

ThresholdGraph::Layered ThresholdGraph::layered_neighborhood(int v, int t) const {
  std::vector<int> dist = hop_distances_h(v);
  Layered out;
  for (int u = 0; u < num_vertices(); ++u) {
    if (dist[u] < 0) continue;
    if (dist[u] < t)
      out.inside.push_back(u);
    else if (dist[u] == t)
      out.frontier.push_back(u);
  }
  return out;
}

int ThresholdGraph::hop_diameter_g(const std::vector<int>& S) const {
  if (S.empty()) throw std::invalid_argument("hop_diameter_g: empty set");
  int diam = 0;
  for (int v : S) {
    std::vector<int> dist = hop_distances_g(v);
    for (int u : S) {
      if (dist[u] < 0) return -1;  // infinity
      diam = std::max(diam, dist[u]);
    }
  }
  return diam;
}

}  // namespace mckc
