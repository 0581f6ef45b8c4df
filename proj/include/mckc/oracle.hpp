#pragma once

#include <optional>

#include "mckc/instance.hpp"

namespace mckc {

/// Size guards for the exhaustive oracles.  Exceeding a guard is a hard
/// error, never silent truncation: the oracles are ground truth.
struct OracleGuard : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exhaustive search for a placement + assignment at the given radius with
/// per-facility bound ceil(b * c_p) and edges d(i,j) <= radius.
/// NONE (nullopt) is exact: no feasible placement exists.
/// Guard: |F| <= 10 and sum k_p <= 10.
std::optional<McKcSolution> brute_force_mckc(const MckcInstance& inst, const Rat& radius,
                                             const Rat& b);

/// Smallest achievable capacity-violation ratio max_{(i,p)} load/c_p over
/// all placements and integral assignments at the given radius, or nullopt
/// when no placement can serve all clients at any violation.  Same guard
/// as brute_force_mckc.  Exact rationals throughout.
std::optional<Rat> brute_force_mckc_min_ratio(const MckcInstance& inst, const Rat& radius);

struct CckpBruteResult {
  Rat ratio;  // max over assignments of min_i received_i / D_i; 0 if some machine empty
  // witness: per machine, multiset of job-type indices
  std::vector<std::vector<int>> assignment;
};

/// Exact max-min ratio by exhaustive assignment enumeration respecting f_i.
/// Guard: total job copies <= 12 (trimmed to the useful prefix), m <= 5.
CckpBruteResult brute_force_cckp(const CckpInstance& inst, const SupplyVector& supply);

}  // namespace mckc
