#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mckc/instance.hpp"

namespace mckc {

/// Jobs handed to each machine, as multisets of job-type indices.
struct Allocation {
  std::vector<std::vector<int>> per_machine;

  Rat received(const CckpInstance& inst, int i) const {
    Rat s(0);
    for (int t : per_machine[i]) s += inst.job_types[t];
    return s;
  }
};

/// Empty when the allocation respects supply counts and cardinalities;
/// otherwise the first violation found.
std::optional<std::string> check_allocation(const CckpInstance& inst, const SupplyVector& supply,
                                            const Allocation& a);

/// Dual weights proving the assignment LP (A1)-(A3) infeasible:
/// (F1) sum_i beta_i D_i > sum_j s_j alpha_j,
/// (F2) beta_i min(c_j, D_i) <= alpha_j for all i, j,  (F3) beta >= 0.
struct FarkasCert {
  std::vector<Rat> alpha;  // per job type
  std::vector<Rat> beta;   // per machine
};

bool verify_farkas(const CckpInstance& inst, const SupplyVector& supply, const FarkasCert& cert);

/// Greedy half-demand filling for Q||C_min.  Returns exactly one of:
/// an allocation giving every machine >= D_i/2, or a verified Farkas
/// certificate.  Requires all f_i unbounded.
struct GreedyOutcome {
  std::optional<Allocation> allocation;
  std::optional<FarkasCert> certificate;
};
GreedyOutcome greedy_qcmin(const CckpInstance& inst, const SupplyVector& supply);

/// Fractional machine x type assignment point.
using AssignmentPoint = std::vector<std::vector<Rat>>;

/// Empty when z satisfies (A1) sum_i z_ij <= s_j, (A4) sum_j z_ij <= f_i,
/// z >= 0, within additive `slack` per constraint.
std::optional<std::string> check_assignment_point(const CckpInstance& inst,
                                                  const SupplyVector& supply,
                                                  const AssignmentPoint& z,
                                                  const Rat& slack = Rat(0));

/// Shmoys-Tardos style rounding of a fractional assignment: machine i ends
/// with at most ceil(sum_j z_ij) jobs, supply respected, and capacity (with
/// values capped at D_i) at least the fractional amount minus
/// C_i = max{c_j : z_ij > 0}.
Allocation shmoys_tardos_round(const CckpInstance& inst, const SupplyVector& supply,
                               const AssignmentPoint& z);

/// Admissibility lists of the restricted-assignment reduction:
/// job type j may go to machine i iff c_j >= D_i / (2 f_i).
std::vector<std::vector<bool>> reduce_to_restricted(const CckpInstance& inst);

// ---------------------------------------------------------------------------
// Configuration LP machinery shared by the separation oracle, the rounding
// and the gap generators.
// ---------------------------------------------------------------------------

/// Sparse multiset of job types: sorted (type, count) pairs, counts >= 1.
using Config = std::vector<std::pair<int, int>>;

Config make_config(std::vector<int> types);
Rat config_capacity(const CckpInstance& inst, const Config& c);
std::int64_t config_size(const Config& c);
int config_count(const Config& c, int type);

/// z(i, S) masses per machine, sparse over configurations.
struct ConfLpSolution {
  std::vector<std::vector<std::pair<Config, Rat>>> z;
};

/// Empty when the solution satisfies (C1) row sums = 1, (C2) type usage
/// <= s_j, and (C3) every support configuration S has |S| <= f_i and
/// capacity >= D_i / demand_scale; `slack` loosens (C1)/(C2) additively.
std::optional<std::string> check_conf_solution(const CckpInstance& inst,
                                               const SupplyVector& supply,
                                               const ConfLpSolution& sol,
                                               const Rat& demand_scale = Rat(1),
                                               const Rat& slack = Rat(0));

/// Configuration-LP rounding: bucket demands by powers of two, isolate
/// large jobs, pivot away hybrid machines, match the stubborn ones, then
/// assignment-LP rounding for the rest.  Every machine receives at least
/// D_i / (6 max(1, log2 D)) with D = D_max/D_min.
Allocation conf_lp_round(const CckpInstance& inst, const SupplyVector& supply,
                         const ConfLpSolution& sol, const Rat& demand_scale = Rat(1));

/// The guarantee denominator 6 max(1, log2 D), exposed so tests assert the
/// exact same threshold the rounding used.
Rat conf_round_guarantee_factor(const CckpInstance& inst);

/// Enumeration-based scheme: rounds the input to powers of (1+eps),
/// enumerates big-job configuration counts, solves the residual assignment
/// LP, rounds, then trims cardinality overshoot.  Every machine gets
/// >= (1 - 3 eps) D_i, or INFEASIBLE (nullopt) when no enumerated guess
/// admits a residual solution.
std::optional<Allocation> qptas_cckp(const CckpInstance& inst, const SupplyVector& supply,
                                     double epsilon);

}  // namespace mckc
