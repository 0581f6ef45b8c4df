#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mckc::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
// One numeric contract for the whole project: constraint satisfaction is
// judged at 1e-7, pivot zero tests at 1e-9.
inline constexpr double kFeasTol = 1e-7;
inline constexpr double kPivotTol = 1e-9;

enum class Rel { Le, Ge, Eq };

struct Constraint {
  std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
  Rel rel = Rel::Le;
  double rhs = 0.0;
  std::string name;
};

/// Dense LP over named, bounded variables.  Build once, solve once.
class LinearSystem {
 public:
  int add_variable(const std::string& name, double lo = 0.0, double hi = kInf);
  int num_variables() const { return int(names_.size()); }
  const std::string& variable_name(int v) const { return names_[v]; }
  double lower(int v) const { return lo_[v]; }
  double upper(int v) const { return hi_[v]; }

  int add_constraint(Constraint c);
  int num_constraints() const { return int(cons_.size()); }
  const Constraint& constraint(int k) const { return cons_[k]; }

  /// Objective is maximized; unset objective means pure feasibility.
  void set_objective(std::vector<std::pair<int, double>> coeffs);
  bool has_objective() const { return !obj_.empty(); }

  /// Plain-text dump, LP-format-like.  Debug aid, not a format promise.
  std::string to_text() const;

 private:
  friend class SimplexSolver;
  std::vector<std::string> names_;
  std::vector<double> lo_, hi_;
  std::vector<Constraint> cons_;
  std::vector<std::pair<int, double>> obj_;
};

enum class LpStatus { Feasible, Infeasible, Unbounded };

/// Infeasibility certificate: signed multipliers that combine the rows and
/// bounds into 0 >= positive.  Convention: row_multipliers[k] >= 0 for Ge
/// rows, <= 0 for Le rows, free for Eq; bound multipliers are >= 0 and
/// attach to x_v >= lo_v resp. x_v <= hi_v.  The combination
///   sum_k lambda_k (a_k . x) + sum_v lo_mult_v x_v - sum_v hi_mult_v x_v
/// has zero coefficient on every variable while
///   sum_k lambda_k b_k + sum_v lo_mult_v lo_v - sum_v hi_mult_v hi_v > 0.
struct FarkasCertificateLp {
  std::vector<double> row_multipliers;
  std::vector<double> lower_multipliers;
  std::vector<double> upper_multipliers;
};

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> point;  // meaningful when Feasible
  double objective = 0.0;
  std::optional<FarkasCertificateLp> certificate;  // set when Infeasible
};

struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two-phase dense simplex.  Dantzig pricing with a deterministic
/// lowest-index tie-break; switches to Bland's rule after a stall to rule
/// out cycling.  Every answer is re-checked before being returned.
LpOutcome solve(const LinearSystem& system);

/// Returns empty when `point` satisfies every constraint and bound within
/// tol; otherwise a description of the first violation.
std::optional<std::string> check_point(const LinearSystem& system,
                                       const std::vector<double>& point, double tol = kFeasTol);

/// Checks a Farkas certificate against the system (combination cancels,
/// contradiction positive, signs correct) within tol.
bool check_certificate(const LinearSystem& system, const FarkasCertificateLp& cert,
                       double tol = kFeasTol);

/// Round-and-cut driver: repeatedly solve base + accumulated cuts; feed
/// feasible points to `separate`, which returns a violated constraint or
/// nothing (= accept).  A returned constraint the point already satisfies
/// is a contract violation and throws std::logic_error.
struct CutLoopResult {
  enum class Kind { Accepted, Infeasible, CutLimit } kind;
  LpOutcome outcome;   // the accepting solve / infeasible solve / last solve
  int rounds = 0;      // cuts added
  std::vector<Constraint> cuts;
};

CutLoopResult cutting_plane_solve(
    LinearSystem base,
    const std::function<std::optional<Constraint>(const std::vector<double>&)>& separate,
    int max_rounds);

}  // namespace mckc::lp
