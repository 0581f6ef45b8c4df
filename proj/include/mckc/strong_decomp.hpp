#pragma once

#include "mckc/weak_decomp.hpp"

namespace mckc {

/// Fractional openings y_{ip} and connections x_{ijp} at a radius guess.
/// Exact rationals; LP output is snapped once on entry.
struct FractionalSolution {
  // y[facility][type], x[facility][client][type] (client-local indices)
  std::vector<std::vector<Rat>> y;
  std::vector<std::vector<std::vector<Rat>>> x;
  Rat radius;

  static FractionalSolution from_doubles(const MckcInstance& inst,
                                         const std::vector<std::vector<double>>& y,
                                         const std::vector<std::vector<std::vector<double>>>& x,
                                         const Rat& radius);
};

/// Empty when (x, y) satisfies (L1)-(L6) at the graph's radius within
/// `slack`; otherwise the first violation.  (L5) is skipped for soft
/// instances.
std::optional<std::string> check_fractional(const MckcInstance& inst,
                                            const FractionalSolution& f,
                                            const Rat& slack = Rat(0));

/// Fractional demand served per unit opening:
///   effc(i,p) = sum_{alive j} d_j x_{ijp} / y_{ip}.
Rat effective_capacity(const MckcInstance& inst, const std::vector<bool>& client_alive,
                       const std::vector<std::vector<std::vector<Rat>>>& xhat,
                       const std::vector<std::vector<Rat>>& y, int facility, int type);

/// The thresholds of the partition algorithm.  The default formulas put
/// t_star in the thousands for practical delta; tests exercising the
/// roundable branch pass custom values.
struct StrongParams {
  Rat epsilon;        // min(1/12, delta/100)
  int t_star;         // smallest even integer > ceil((8/eps) ln(1/eps))
  int augment_radius; // ceil((16/eps) ln(1/eps))
  int diam_bound;     // ceil((50/eps) ln(1/eps))
  static StrongParams from_delta(const Rat& delta);
};

struct RoundableSet {
  std::vector<int> facilities;  // vertex ids
  int root = -1;
  // frozen effective capacities at assignment time: (facility, type) -> effc
  std::vector<std::tuple<int, int, Rat>> frozen_effc;
  // integral rounding: opened capacity-class slots (facility, class value)
  std::vector<std::pair<int, Rat>> opened;
};

struct StrongDecomposition {
  std::vector<RoundableSet> roundable;           // S_k with roundings
  std::vector<NeighborhoodPart> neighborhoods;   // (T_l, J_l)
  std::vector<int> c_b, c_bb, c_d;               // client vertex ids
  std::vector<ChargeEntry> charge;               // phi
  std::vector<std::vector<std::vector<Rat>>> xhat;
  std::vector<std::vector<Rat>> y_source;        // the y it was built from
  StrongParams params;
  Rat delta;
  int charge_hop_support = 0;
  int iterations = 0;
};

/// Algorithm: repeatedly take the (i*, p*) of highest effective capacity,
/// grow an odd-radius ball until it stops expanding; an always-expanding
/// ball becomes a roundable set, a stalled one either augments a nearby
/// roundable set or becomes a complete neighborhood.  Invariants I1/I2 are
/// asserted at every iteration.
StrongDecomposition strong_decompose(const ThresholdGraph& g, const FractionalSolution& frac,
                                     const Rat& delta);
StrongDecomposition strong_decompose_with_params(const ThresholdGraph& g,
                                                 const FractionalSolution& frac,
                                                 const Rat& delta, const StrongParams& params);

/// Buckets the frozen effc values into powers of (1+eps) and opens
/// floor(bucket y-mass) distinct locations per bucket at the bucket's class
/// value.  Returns the opened slots.
std::vector<std::pair<int, Rat>> round_roundable_set(
    const MckcInstance& inst, const std::vector<int>& facilities,
    const std::vector<std::tuple<int, int, Rat>>& frozen_effc,
    const std::vector<std::vector<Rat>>& y, const Rat& epsilon);

struct RoundableReport {
  bool diameter_ok = false;
  bool condition1_ok = false;  // suffix floors at every capacity threshold
  bool condition2_ok = false;  // served demand vs b * opened class values
  bool ok() const { return diameter_ok && condition1_ok && condition2_ok; }
};

RoundableReport verify_roundable(const ThresholdGraph& g, const std::vector<int>& facilities,
                                 const std::vector<std::pair<int, Rat>>& opened,
                                 const std::vector<std::vector<std::vector<Rat>>>& xhat,
                                 const std::vector<std::vector<Rat>>& y, int a_hops,
                                 const Rat& b);

/// Gamma_G(J) subseteq T, checked against the undeleted graph.
bool verify_complete_neighborhood(const ThresholdGraph& g, const std::vector<int>& T,
                                  const std::vector<int>& J);

/// Extends connections defined on surviving clients to the deleted ones by
/// the phi-mixture:  x_{ijp} = sum_{j'} phi_{j,j'} x_{ij'p}.
std::vector<std::vector<std::vector<Rat>>> extend_deleted(
    const MckcInstance& inst, std::vector<std::vector<std::vector<Rat>>> x,
    const std::vector<ChargeEntry>& charge);

}  // namespace mckc
