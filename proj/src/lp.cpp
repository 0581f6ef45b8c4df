#include "mckc/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace mckc::lp {

int LinearSystem::add_variable(const std::string& name, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("variable '" + name + "': lower > upper");
  names_.push_back(name);
  lo_.push_back(lo);
  hi_.push_back(hi);
  return int(names_.size()) - 1;
}

int LinearSystem::add_constraint(Constraint c) {
  for (auto& [v, a] : c.coeffs)
    if (v < 0 || v >= num_variables())
      throw std::invalid_argument("constraint references undeclared variable");
  cons_.push_back(std::move(c));
  return int(cons_.size()) - 1;
}

void LinearSystem::set_objective(std::vector<std::pair<int, double>> coeffs) {
  for (auto& [v, a] : coeffs)
    if (v < 0 || v >= num_variables())
      throw std::invalid_argument("objective references undeclared variable");
  obj_ = std::move(coeffs);
}

std::string LinearSystem::to_text() const {
  std::ostringstream os;
  os << (obj_.empty() ? "feasibility\n" : "maximize\n");
  if (!obj_.empty()) {
    os << " ";
    for (auto& [v, a] : obj_) os << " " << (a >= 0 ? "+" : "") << a << " " << names_[v];
    os << "\n";
  }
  os << "subject to\n";
  for (std::size_t k = 0; k < cons_.size(); ++k) {
    os << "  " << (cons_[k].name.empty() ? "c" + std::to_string(k) : cons_[k].name) << ":";
    for (auto& [v, a] : cons_[k].coeffs)
      os << " " << (a >= 0 ? "+" : "") << a << " " << names_[v];
    os << (cons_[k].rel == Rel::Le ? " <= " : cons_[k].rel == Rel::Ge ? " >= " : " = ")
       << cons_[k].rhs << "\n";
  }
  os << "bounds\n";
  for (int v = 0; v < num_variables(); ++v)
    os << "  " << lo_[v] << " <= " << names_[v] << " <= " << hi_[v] << "\n";
  return os.str();
}

std::optional<std::string> check_point(const LinearSystem& system,
                                       const std::vector<double>& point, double tol) {
  if (int(point.size()) != system.num_variables()) return "point has wrong dimension";
  for (int v = 0; v < system.num_variables(); ++v) {
    if (point[v] < system.lower(v) - tol)
      return "bound violated: " + system.variable_name(v) + " below lower";
    if (point[v] > system.upper(v) + tol)
      return "bound violated: " + system.variable_name(v) + " above upper";
  }
  for (int k = 0; k < system.num_constraints(); ++k) {
    const Constraint& c = system.constraint(k);
    double lhs = 0;
    for (auto& [v, a] : c.coeffs) lhs += a * point[v];
    bool ok = c.rel == Rel::Le   ? lhs <= c.rhs + tol
              : c.rel == Rel::Ge ? lhs >= c.rhs - tol
                                 : std::abs(lhs - c.rhs) <= tol;
    if (!ok)
      return "constraint violated: " + (c.name.empty() ? "row " + std::to_string(k) : c.name);
  }
  return std::nullopt;
}

bool check_certificate(const LinearSystem& system, const FarkasCertificateLp& cert,
                       double tol) {
  const int n = system.num_variables();
  const int m = system.num_constraints();
  if (int(cert.row_multipliers.size()) != m || int(cert.lower_multipliers.size()) != n ||
      int(cert.upper_multipliers.size()) != n)
    return false;
  for (int k = 0; k < m; ++k) {
    double lam = cert.row_multipliers[k];
    if (system.constraint(k).rel == Rel::Le && lam > tol) return false;
    if (system.constraint(k).rel == Rel::Ge && lam < -tol) return false;
  }
  std::vector<double> combo(n, 0.0);
  double rhs = 0.0;
  for (int k = 0; k < m; ++k) {
    double lam = cert.row_multipliers[k];
    if (lam == 0.0) continue;
    for (auto& [v, a] : system.constraint(k).coeffs) combo[v] += lam * a;
    rhs += lam * system.constraint(k).rhs;
  }
  for (int v = 0; v < n; ++v) {
    if (cert.lower_multipliers[v] < -tol || cert.upper_multipliers[v] < -tol) return false;
    if (cert.lower_multipliers[v] != 0.0) {
      if (std::isinf(system.lower(v))) return false;
      combo[v] += cert.lower_multipliers[v];
      rhs += cert.lower_multipliers[v] * system.lower(v);
    }
    if (cert.upper_multipliers[v] != 0.0) {
      if (std::isinf(system.upper(v))) return false;
      combo[v] -= cert.upper_multipliers[v];
      rhs -= cert.upper_multipliers[v] * system.upper(v);
    }
  }
  double scale = std::abs(rhs);
  for (double c : combo) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return false;
  for (double c : combo)
    if (std::abs(c) > tol * std::max(1.0, scale)) return false;
  return rhs > tol;
}

// ---------------------------------------------------------------------------
// Simplex internals.  The user system is normalized to
//     A [x'; slack] = b,   x', slack >= 0,   b >= 0
// with lower bounds shifted out, free variables split, and finite upper
// bounds turned into extra Le rows.
// ---------------------------------------------------------------------------

namespace {

struct VarMap {
  int plus = -1;
  int minus = -1;   // >= 0 only for free variables (x = plus - minus)
  double shift = 0.0;
};

}  // namespace

class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearSystem& sys) : sys_(sys) { build(); }
  LpOutcome run();

 private:
  void build();
  bool simplex(int phase);  // false = unbounded (phase 2)
  void pivot(int row, int col);
  LpOutcome extract_feasible();
  LpOutcome extract_infeasible();

  const LinearSystem& sys_;
  std::vector<VarMap> vmap_;
  std::vector<std::vector<double>> A_;
  std::vector<double> b_;
  std::vector<double> row_sign_;
  std::vector<int> row_origin_;     // user constraint index, or -1 for bound rows
  std::vector<int> row_bound_var_;  // user variable of an upper-bound row
  std::vector<int> init_unit_col_;  // the unit column each row starts basic on
  std::vector<double> cost_;        // phase-2 costs (minimize)
  std::vector<int> basis_;
  int n_base_cols_ = 0;  // structural + slack; artificials live past this
  int n_art_ = 0;
  std::vector<double> obj_row_;
  double neg_obj_value_ = 0.0;  // -(current phase objective)
};

void SimplexSolver::build() {
  const int n = sys_.num_variables();
  vmap_.resize(n);
  int col = 0;
  for (int v = 0; v < n; ++v) {
    vmap_[v].plus = col++;
    if (std::isfinite(sys_.lower(v)))
      vmap_[v].shift = sys_.lower(v);
    else
      vmap_[v].minus = col++;
  }
  const int n_struct = col;

  int n_rows = sys_.num_constraints();
  int n_slacks = 0;
  for (int k = 0; k < sys_.num_constraints(); ++k)
    if (sys_.constraint(k).rel != Rel::Eq) ++n_slacks;
  for (int v = 0; v < n; ++v)
    if (std::isfinite(sys_.upper(v))) {
      ++n_rows;
      ++n_slacks;
    }

  n_base_cols_ = n_struct + n_slacks;
  A_.assign(n_rows, std::vector<double>(n_base_cols_, 0.0));
  b_.assign(n_rows, 0.0);
  row_sign_.assign(n_rows, 1.0);
  row_origin_.assign(n_rows, -1);
  row_bound_var_.assign(n_rows, -1);
  std::vector<int> slack_col(n_rows, -1);

  auto coeff_into = [&](std::vector<double>& row, int v, double a) {
    row[vmap_[v].plus] += a;
    if (vmap_[v].minus >= 0) row[vmap_[v].minus] -= a;
  };

  int r = 0, next_slack = n_struct;
  for (int k = 0; k < sys_.num_constraints(); ++k) {
    const Constraint& c = sys_.constraint(k);
    double rhs = c.rhs;
    for (auto& [v, a] : c.coeffs) {
      coeff_into(A_[r], v, a);
      rhs -= a * vmap_[v].shift;
    }
    if (c.rel != Rel::Eq) {
      slack_col[r] = next_slack;
      A_[r][next_slack++] = (c.rel == Rel::Le) ? 1.0 : -1.0;
    }
    b_[r] = rhs;
    row_origin_[r] = k;
    ++r;
  }
  for (int v = 0; v < n; ++v) {
    if (!std::isfinite(sys_.upper(v))) continue;
    coeff_into(A_[r], v, 1.0);
    slack_col[r] = next_slack;
    A_[r][next_slack++] = 1.0;
    b_[r] = sys_.upper(v) - vmap_[v].shift;
    row_bound_var_[r] = v;
    ++r;
  }
  assert(r == n_rows && next_slack == n_base_cols_);

  if (n_rows == 0) {
    // keep the tableau machinery happy with one vacuous row
    A_.push_back(std::vector<double>(n_base_cols_ + 1, 0.0));
    A_[0][n_base_cols_] = 1.0;
    b_.push_back(1.0);
    row_sign_.push_back(1.0);
    row_origin_.push_back(-1);
    row_bound_var_.push_back(-1);
    slack_col.push_back(n_base_cols_);
    ++n_base_cols_;
    n_rows = 1;
  }

  for (int i = 0; i < n_rows; ++i)
    if (b_[i] < 0) {
      row_sign_[i] = -1.0;
      b_[i] = -b_[i];
      for (double& a : A_[i]) a = -a;
    }

  // A slack whose coefficient ended up +1 can seed the basis.
  init_unit_col_.assign(n_rows, -1);
  for (int i = 0; i < n_rows; ++i)
    if (slack_col[i] >= 0 && A_[i][slack_col[i]] == 1.0) init_unit_col_[i] = slack_col[i];

  cost_.assign(n_base_cols_, 0.0);
  if (sys_.has_objective())
    for (auto& [v, a] : sys_.obj_) {
      cost_[vmap_[v].plus] -= a;
      if (vmap_[v].minus >= 0) cost_[vmap_[v].minus] += a;
    }
}

void SimplexSolver::pivot(int row, int col) {
  double inv = 1.0 / A_[row][col];
  for (double& a : A_[row]) a *= inv;
  b_[row] *= inv;
  A_[row][col] = 1.0;
  for (std::size_t i = 0; i < A_.size(); ++i) {
    if (int(i) == row) continue;
    double f = A_[i][col];
    if (f == 0.0) continue;
    double* tgt = A_[i].data();
    const double* src = A_[row].data();
    const int cols = int(A_[i].size());
    for (int j = 0; j < cols; ++j) tgt[j] -= f * src[j];
    A_[i][col] = 0.0;
    b_[i] -= f * b_[row];
  }
  double f = obj_row_[col];
  if (f != 0.0) {
    for (std::size_t j = 0; j < obj_row_.size(); ++j) obj_row_[j] -= f * A_[row][j];
    obj_row_[col] = 0.0;
    neg_obj_value_ -= f * b_[row];
  }
  basis_[row] = col;
}

bool SimplexSolver::simplex(int phase) {
  const int m = int(A_.size());
  const int enter_limit = n_base_cols_;  // artificials never re-enter
  int stall = 0;
  bool bland = false;
  double last_val = neg_obj_value_;
  long pivots = 0;
  const long pivot_limit = 200000L + 200L * (long(m) + enter_limit);

  while (true) {
    if (++pivots > pivot_limit) throw DegeneracyError("simplex: pivot limit exceeded");
    int enter = -1;
    if (bland) {
      for (int j = 0; j < enter_limit; ++j)
        if (obj_row_[j] < -kPivotTol) {
          enter = j;
          break;
        }
    } else {
      double best = -kPivotTol;
      for (int j = 0; j < enter_limit; ++j)
        if (obj_row_[j] < best) {
          best = obj_row_[j];
          enter = j;
        }
    }
    if (enter < 0) return true;

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      if (A_[i][enter] > kPivotTol) {
        double ratio = b_[i] / A_[i][enter];
        if (leave < 0 || ratio < best_ratio - kPivotTol ||
            (std::abs(ratio - best_ratio) <= kPivotTol && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) {
      if (phase == 1) throw DegeneracyError("phase-1 unbounded; numeric trouble");
      return false;
    }
    pivot(leave, enter);

    if (!bland) {
      if (neg_obj_value_ <= last_val + 1e-12)
        ++stall;
      else
        stall = 0;
      last_val = neg_obj_value_;
      if (stall > 64) bland = true;
    }
  }
}

LpOutcome SimplexSolver::run() {
  const int m = int(A_.size());

  basis_.assign(m, -1);
  std::vector<int> needs_art;
  for (int i = 0; i < m; ++i) {
    if (init_unit_col_[i] >= 0)
      basis_[i] = init_unit_col_[i];
    else
      needs_art.push_back(i);
  }
  n_art_ = int(needs_art.size());
  for (int t = 0; t < n_art_; ++t) {
    for (int i = 0; i < m; ++i) A_[i].push_back(i == needs_art[t] ? 1.0 : 0.0);
    basis_[needs_art[t]] = n_base_cols_ + t;
    init_unit_col_[needs_art[t]] = n_base_cols_ + t;
  }
  cost_.resize(n_base_cols_ + n_art_, 0.0);

  // Phase 1: minimize the artificial sum.
  obj_row_.assign(n_base_cols_ + n_art_, 0.0);
  for (int t = 0; t < n_art_; ++t) obj_row_[n_base_cols_ + t] = 1.0;
  neg_obj_value_ = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis_[i] >= n_base_cols_) {
      for (std::size_t j = 0; j < obj_row_.size(); ++j) obj_row_[j] -= A_[i][j];
      neg_obj_value_ -= b_[i];
    }
  simplex(1);
  if (-neg_obj_value_ > kFeasTol) return extract_infeasible();

  // Pivot degenerate artificials out where possible.
  for (int i = 0; i < m; ++i) {
    if (basis_[i] < n_base_cols_) continue;
    int enter = -1;
    for (int j = 0; j < n_base_cols_; ++j)
      if (std::abs(A_[i][j]) > kPivotTol) {
        enter = j;
        break;
      }
    if (enter >= 0) pivot(i, enter);
  }

  // Phase 2.
  obj_row_ = cost_;
  neg_obj_value_ = 0.0;
  for (int i = 0; i < m; ++i) {
    double cb = cost_[basis_[i]];
    if (cb != 0.0) {
      for (std::size_t j = 0; j < obj_row_.size(); ++j) obj_row_[j] -= cb * A_[i][j];
      neg_obj_value_ -= cb * b_[i];
    }
  }
  if (!simplex(2)) {
    LpOutcome out;
    out.status = LpStatus::Unbounded;
    return out;
  }
  return extract_feasible();
}

LpOutcome SimplexSolver::extract_feasible() {
  LpOutcome out;
  out.status = LpStatus::Feasible;
  std::vector<double> cols(A_[0].size(), 0.0);
  for (std::size_t i = 0; i < A_.size(); ++i) cols[basis_[i]] = b_[i];
  out.point.assign(sys_.num_variables(), 0.0);
  for (int v = 0; v < sys_.num_variables(); ++v) {
    double x = cols[vmap_[v].plus] + vmap_[v].shift;
    if (vmap_[v].minus >= 0) x -= cols[vmap_[v].minus];
    out.point[v] = x;
  }
  out.objective = 0.0;
  for (auto& [v, a] : sys_.obj_) out.objective += a * out.point[v];
  if (auto bad = check_point(sys_, out.point))
    throw DegeneracyError("simplex produced an invalid point: " + *bad);
  return out;
}

LpOutcome SimplexSolver::extract_infeasible() {
  // y = c_B B^{-1} for phase-1 costs.  Each row i started basic on the unit
  // column u_i (slack or artificial), so at optimum
  //   objrow[u_i] = c_{u_i} - y_i   with c = 1 on artificials, 0 elsewhere.
  const int m = int(A_.size());
  std::vector<double> y(m);
  for (int i = 0; i < m; ++i) {
    double c = init_unit_col_[i] >= n_base_cols_ ? 1.0 : 0.0;
    y[i] = c - obj_row_[init_unit_col_[i]];
  }

  FarkasCertificateLp cert;
  cert.row_multipliers.assign(sys_.num_constraints(), 0.0);
  cert.lower_multipliers.assign(sys_.num_variables(), 0.0);
  cert.upper_multipliers.assign(sys_.num_variables(), 0.0);

  // Equality row i is row_sign_[i] * (shifted user row), so the user-facing
  // multiplier is row_sign_[i] * y_i: phase-1 optimality makes the slack
  // reduced costs land these on the right side of zero for Le/Ge rows.
  for (int i = 0; i < m; ++i) {
    double mult = row_sign_[i] * y[i];
    if (std::abs(mult) < 1e-13) mult = 0.0;
    if (row_origin_[i] >= 0)
      cert.row_multipliers[row_origin_[i]] = mult;
    else if (row_bound_var_[i] >= 0 && mult != 0.0)
      cert.upper_multipliers[row_bound_var_[i]] = -mult;
  }
  // Lower-bound multipliers absorb whatever coefficient is left per variable.
  std::vector<double> g(sys_.num_variables(), 0.0);
  for (int k = 0; k < sys_.num_constraints(); ++k) {
    if (cert.row_multipliers[k] == 0.0) continue;
    for (auto& [v, a] : sys_.constraint(k).coeffs) g[v] += cert.row_multipliers[k] * a;
  }
  for (int v = 0; v < sys_.num_variables(); ++v) {
    double resid = g[v] - cert.upper_multipliers[v];
    cert.lower_multipliers[v] = -resid;
    if (std::abs(cert.lower_multipliers[v]) < 1e-13) cert.lower_multipliers[v] = 0.0;
  }

  LpOutcome out;
  out.status = LpStatus::Infeasible;
  out.certificate = cert;
  if (!check_certificate(sys_, cert))
    throw DegeneracyError("simplex infeasibility certificate failed verification");
  return out;
}

LpOutcome solve(const LinearSystem& system) {
  SimplexSolver s(system);
  return s.run();
}

CutLoopResult cutting_plane_solve(
    LinearSystem base,
    const std::function<std::optional<Constraint>(const std::vector<double>&)>& separate,
    int max_rounds) {
  CutLoopResult res;
  res.kind = CutLoopResult::Kind::CutLimit;
  for (int round = 0; round <= max_rounds; ++round) {
    res.outcome = solve(base);
    res.rounds = round;
    if (res.outcome.status != LpStatus::Feasible) {
      res.kind = CutLoopResult::Kind::Infeasible;
      return res;
    }
    auto cut = separate(res.outcome.point);
    if (!cut) {
      res.kind = CutLoopResult::Kind::Accepted;
      return res;
    }
    double lhs = 0;
    for (auto& [v, a] : cut->coeffs) lhs += a * res.outcome.point[v];
    bool violated = cut->rel == Rel::Le   ? lhs > cut->rhs + kPivotTol
                    : cut->rel == Rel::Ge ? lhs < cut->rhs - kPivotTol
                                          : std::abs(lhs - cut->rhs) > kPivotTol;
    if (!violated)
      throw std::logic_error("cutting_plane_solve: separator returned a satisfied constraint");
    base.add_constraint(*cut);
    res.cuts.push_back(*cut);
  }
  return res;
}

}  // namespace mckc::lp
