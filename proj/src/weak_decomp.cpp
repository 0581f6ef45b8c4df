#include "mckc/weak_decomp.hpp"

#include <algorithm>
#include <cassert>

namespace mckc {

WeakDecomposition weak_decompose(const ThresholdGraph& g_in, const Rat& epsilon) {
  if (!(epsilon > Rat(0)) || epsilon > Rat(1))
    throw std::invalid_argument("weak_decompose: epsilon must be in (0,1]");
  ThresholdGraph g = g_in;  // private working copy carries the H mask
  g.reset_mask();

  WeakDecomposition out;
  out.epsilon = epsilon;

  while (true) {
    std::vector<int> alive = g.alive_clients();
    if (alive.empty()) break;
    int seed = *std::min_element(alive.begin(), alive.end());
    if (g.neighbors_h(seed).empty())
      throw RadiusInfeasible("client " + std::to_string(seed) +
                             " has no facility within the radius");

    // Smallest even t with |frontier| < eps * |inside clients|.  The ball
    // eventually swallows its component, where the frontier is empty, so
    // this terminates.
    int t = 2;
    ThresholdGraph::Layered lay;
    while (true) {
      lay = g.layered_neighborhood(seed, t);
      std::int64_t inside_clients = 0;
      for (int v : lay.inside)
        if (g.is_client(v)) ++inside_clients;
      if (Rat(std::int64_t(lay.frontier.size())) < epsilon * Rat(inside_clients)) break;
      t += 2;
    }

    NeighborhoodPart part;
    part.root = seed;
    part.grown_t = t;
    for (int v : lay.inside)
      (g.is_facility(v) ? part.facilities : part.clients).push_back(v);
    out.max_grow_t = std::max(out.max_grow_t, t);

    // Boundary clients are deleted and charged uniformly onto J.
    assert(!part.clients.empty());
    Rat w = Rat(1) / Rat(std::int64_t(part.clients.size()));
    std::vector<int> dist_from_seed = g.hop_distances_g(seed);
    for (int v : lay.frontier) {
      assert(g.is_client(v));
      out.deleted.push_back(v);
      for (int tgt : part.clients) {
        out.charge.push_back({v, tgt, w});
        // support distance: via the seed, both ends have known hops
        int hops = dist_from_seed[v] + dist_from_seed[tgt];
        out.charge_hop_support = std::max(out.charge_hop_support, hops);
      }
    }

    for (int v : lay.inside) g.remove(v);
    for (int v : lay.frontier) g.remove(v);
    out.parts.push_back(std::move(part));
  }
  return out;
}

std::pair<CckpInstance, SupplyVector> weak_to_cckp(const WeakDecomposition& w,
                                                   const MckcInstance& inst, const Rat& gamma,
                                                   bool with_cardinality) {
  if (!(gamma > Rat(0))) throw std::invalid_argument("weak_to_cckp: gamma must be positive");
  CckpInstance cckp;
  for (const auto& part : w.parts) {
    CckpMachine m;
    Rat demand(0);
    for (int v : part.clients) demand += inst.client_weight[v - inst.num_facilities()];
    m.demand = demand / gamma;
    m.cardinality = with_cardinality ? std::int64_t(part.facilities.size())
                                     : CckpInstance::kUnbounded;
    cckp.machines.push_back(m);
  }
  SupplyVector supply;
  for (const auto& t : inst.profile) {
    cckp.job_types.push_back(t.cap);
    supply.counts.push_back(t.count);
  }
  return {cckp, supply};
}

}  // namespace mckc
