#pragma once

#include <optional>

#include "mckc/maxmin.hpp"

namespace mckc {

/// Hyperplane separating a queried supply point from a supply polyhedron:
/// every member t satisfies  sum_j alpha_j t_j >= rhs  while the query
/// violates it strictly.  For the assignment polyhedron rhs = sum beta_i
/// D_i (the Farkas machine side); for the configuration polyhedron
/// rhs = sum beta_i, the (C1) aggregate.  beta is kept for reference.
struct SeparatingHyperplane {
  std::vector<Rat> alpha;  // per job type
  std::vector<Rat> beta;   // per machine
  Rat rhs;
  Rat machine_side() const { return rhs; }
  Rat job_side(const std::vector<Rat>& supply) const {
    Rat s(0);
    for (std::size_t j = 0; j < alpha.size(); ++j) s += alpha[j] * supply[j];
    return s;
  }
  bool violated_by(const std::vector<Rat>& supply) const {
    return job_side(supply) < machine_side();
  }
};

/// Membership in the assignment polyhedron (A1)-(A3) of a Q||C_min
/// instance; rational supply points allowed.  On the outside, the LP dual
/// reshapes into the Farkas system (F1)-(F3).
struct PAssResult {
  std::optional<AssignmentPoint> witness;
  std::optional<SeparatingHyperplane> hyperplane;
};
PAssResult p_ass_membership(const CckpInstance& inst, const std::vector<Rat>& supply_point);

/// (1+eps)-approximate separation for the configuration polyhedron: either
/// ACCEPT with an explicit z over generated configurations satisfying
/// (C1)-(C2) at demands D_i/(1+eps), or a separating hyperplane.  Requires
/// finite cardinalities.  Throws RoundLimit if the column-generation loop
/// exceeds max_rounds.
struct PConfResult {
  bool accepted = false;
  ConfLpSolution z;                  // on accept
  SeparatingHyperplane hyperplane;   // on separation
  int rounds = 0;
};
struct RoundLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};
PConfResult p_conf_separation(const CckpInstance& inst, const std::vector<Rat>& supply_point,
                              double eps, int max_rounds = 500);

/// Exact DP for: maximize sum of weights over multisets S with |S| <= f,
/// n(S,j) <= copies_j, and strict value budget sum_j alpha_j n(S,j) <
/// budget.  Values are discretized on a 10^4-cell grid (rounded down), so
/// the budget adherence is (1 + 1e-4 f)-approximate unless the alphas
/// already sit on the grid.  nullopt when even the empty set is out of
/// budget (budget <= 0).
std::optional<Config> max_knapsack_cardinality(const std::vector<Rat>& values,
                                               const std::vector<Rat>& weights,
                                               const std::vector<std::int64_t>& copies,
                                               std::int64_t cardinality, const Rat& budget);

/// Suffix domination  t >=_suff s  over the capacity-ascending order of the
/// instance's job types.
bool suffix_dominates(const CckpInstance& inst, const std::vector<Rat>& t,
                      const std::vector<Rat>& s);

/// Upward-feasibility witness shifts: given z feasible for supply s and a
/// suffix-dominating t, push the overflow mass to the next-larger capacity
/// pairwise until the witness fits t.
AssignmentPoint shift_witness_ass(const CckpInstance& inst, AssignmentPoint z,
                                  const std::vector<Rat>& s, const std::vector<Rat>& t);
ConfLpSolution shift_witness_conf(const CckpInstance& inst, ConfLpSolution z,
                                  const std::vector<Rat>& s, const std::vector<Rat>& t);

}  // namespace mckc
