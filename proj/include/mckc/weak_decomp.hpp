#pragma once

#include <stdexcept>

#include "mckc/graph.hpp"

namespace mckc {

/// Raised when a radius guess is refuted outright (e.g. a client with no
/// facility in range, so L1 cannot hold).
struct RadiusInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A complete neighborhood (T_l, J_l): facility set plus the client set
/// responsible for it.  Vertex ids of the threshold graph.
struct NeighborhoodPart {
  std::vector<int> facilities;
  std::vector<int> clients;
  int root = -1;  // seed vertex of the region-growing round
  int grown_t = 0;
};

/// Sparse charging map phi: deleted client -> (surviving client, weight).
struct ChargeEntry {
  int deleted;
  int target;
  Rat weight;
};

struct WeakDecomposition {
  std::vector<NeighborhoodPart> parts;
  std::vector<int> deleted;          // C_d (vertex ids)
  std::vector<ChargeEntry> charge;   // phi, rows sum to 1 per deleted client
  Rat epsilon;
  int max_grow_t = 0;                // largest t any round stopped at
  int charge_hop_support = 0;        // max hop distance of a phi pair in G
};

/// Region-growing partition into complete neighborhoods plus a deletable
/// boundary.  Each round seeds at the lowest-id alive client, grows to the
/// smallest even non-expanding t, emits (T, J), deletes the boundary into
/// C_d charging it uniformly onto J, and removes the whole ball.
WeakDecomposition weak_decompose(const ThresholdGraph& g, const Rat& epsilon);

/// The CCKP hand-off: one machine per part, demand = sum of its clients'
/// weights scaled down by gamma, cardinality |T_l| (or none when
/// `with_cardinality` is false, the soft-capacity route).  Supply = k_p.
std::pair<CckpInstance, SupplyVector> weak_to_cckp(const WeakDecomposition& w,
                                                   const MckcInstance& inst, const Rat& gamma,
                                                   bool with_cardinality = true);

}  // namespace mckc
