#pragma once

#include "mckc/strong_decomp.hpp"
#include "mckc/supply.hpp"

namespace mckc {

/// The K-group placement gap: K groups of 2 facilities and K clients at
/// intra-distance 1, everything else infinite; K unit capacities and K-1
/// capacity-K capacities.  Carries the fractional LP witness.
struct MckcGap {
  MckcInstance instance;
  FractionalSolution witness;
};
MckcGap gen_mckc_gap(int K);

/// Petersen-graph lower bound for P||C_min supply polyhedra: 15 edge jobs
/// p_ij = 2^i + 2^j, 3k machines of demand 1023, the six perfect matchings
/// (computed, double-cover verified) as feasible supply vectors, and their
/// integral mixture.
struct PetersenGap {
  CckpInstance instance;
  std::vector<std::pair<int, int>> edges;                  // job type order
  std::vector<std::vector<std::pair<int, int>>> matchings; // six, each 5 edges
  std::vector<SupplyVector> matching_supplies;
  SupplyVector mixture;
};
PetersenGap gen_petersen_pcmin(int k);

/// Exact: can the mixture supply give every machine its full 1023?  Only
/// k = 1 is within the exhaustive guard.
bool petersen_mixture_feasible(const PetersenGap& gap);

/// The configuration-LP integrality gap instance I_K with its fractional
/// witness, plus the two feasible supply vectors whose (1/K, 1-1/K) mix is
/// the integral point the polyhedron cannot serve.
struct ConfGap {
  CckpInstance instance;
  SupplyVector supply;
  ConfLpSolution witness;
  // machine blocks for the tests: index ranges
  int m0;                        // index of the single demand-1 machine
  std::vector<int> mi;           // M_1..M_K
  std::vector<std::vector<int>> classes;  // class machines per i
  // the mixture construction: s1, s2 feasible (witness allocations bundled),
  // mix = (1/K) s1 + (1 - 1/K) s2, integral
  SupplyVector s1, s2, mix;
  Allocation s1_assignment, s2_assignment;
};
ConfGap gen_conf_gap(int K);

/// Bansal-Sviridenko restricted-assignment gap, with admissibility lists
/// and the exact configuration witness.
struct BansalSviridenkoGap {
  CckpInstance instance;                    // f_i unbounded (restricted assignment)
  std::vector<std::vector<bool>> admissible;  // [machine][job type]
  SupplyVector supply;
  ConfLpSolution witness;
};
BansalSviridenkoGap gen_bansal_sviridenko(int K);

/// Exact max-min ratio of a restricted-assignment instance by exhaustive
/// enumeration (small K only).
Rat restricted_maxmin_ratio(const BansalSviridenkoGap& gap);

/// Embeds a CCKP instance into MCKC: one zero-diameter group per machine
/// with f_i locations and D_i clients, cross-group distance 1, capacities
/// from the job multiset.  Demands must be integers, cardinalities finite.
MckcInstance gen_qcmin_reduction(const CckpInstance& inst, const SupplyVector& supply);

}  // namespace mckc
