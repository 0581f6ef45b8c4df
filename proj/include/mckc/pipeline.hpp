#pragma once

#include <iosfwd>

#include "mckc/lp.hpp"
#include "mckc/strong_decomp.hpp"
#include "mckc/supply.hpp"

namespace mckc {

enum class PipelineMode { Weak, StrongSoft, StrongHard };
enum class CckpBackend { Greedy, ConfRound, Qptas, Brute };

struct PipelineConfig {
  Rat delta = Rat(1, 2);
  PipelineMode mode = PipelineMode::StrongSoft;
  CckpBackend backend = CckpBackend::Greedy;
  int max_cut_rounds = 50;
  double separation_eps = 0.0;  // 0: use delta
  std::optional<StrongParams> params_override;  // testing hook
  std::ostream* trace = nullptr;                // JSON-lines event log
};

enum class FailureKind { LpInfeasible, CutProvedInfeasible, CutLimit, MatchingFailed, Guard };

struct PipelineResult {
  std::optional<McKcSolution> solution;
  QualityReport quality;       // when solution holds
  int solution_max_hops = 0;   // measured hop distance of the assignment
  int hop_budget = 0;          // theoretical bound it must satisfy
  std::optional<FailureKind> failure;
  std::string detail;
  int cuts = 0;

  bool ok() const { return solution.has_value(); }
};

/// The (L1)-(L6) system at a radius; connection variables exist only for
/// pairs within the radius.
struct MckcLp {
  lp::LinearSystem sys;
  std::vector<std::vector<int>> yvar;               // facility x type
  std::vector<std::vector<std::vector<int>>> xvar;  // facility x client x type, -1 off-radius
};
MckcLp build_mckc_lp(const MckcInstance& inst, const Rat& radius);
FractionalSolution extract_fractional(const MckcInstance& inst, const MckcLp& lp,
                                      const std::vector<double>& point, const Rat& radius);

/// The mass-movement step: given slot counts s on an ascending capacity
/// scale (class entries carry k = 0), fractional masses y on the same
/// scale, and per-entry budgets k, produces
///   s~_p = floor(suffix y at p) - floor(suffix y above p)
/// plus the residual t = k - s~ and an assignment of each slot to an entry
/// of value at least the slot's own (the upgrade map).
struct TransferResult {
  std::vector<std::int64_t> s_tilde;
  std::vector<std::int64_t> t_residual;
  // slot index (into the expansion of s, largest value first) -> entry
  std::vector<int> upgrade;
};
TransferResult transfer_capacities(const std::vector<Rat>& values,
                                   const std::vector<std::int64_t>& s,
                                   const std::vector<Rat>& y_masses,
                                   const std::vector<std::int64_t>& k);

/// Integral b-matching: every client to one opened slot, edge iff the
/// client is within `a_hops` of the slot's facility in g, slot load capped
/// by ceil(b * cap).  Unit client weights required.  nullopt is exact.
std::optional<std::vector<int>> assign_clients_matching(
    const ThresholdGraph& g, const std::vector<std::pair<int, int>>& placements, int a_hops,
    const Rat& b);

/// One radius guess end to end.  Certified failures carry the kind.
PipelineResult solve_at_radius(const MckcInstance& inst, const Rat& radius,
                               const PipelineConfig& config);

/// Binary search over the sorted distinct facility-client distances for the
/// smallest radius solve_at_radius accepts.
struct GuessResult {
  std::optional<Rat> radius;
  PipelineResult result;
};
GuessResult guess_opt(const MckcInstance& inst, const PipelineConfig& config);

}  // namespace mckc
