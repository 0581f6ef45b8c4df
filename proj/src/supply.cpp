#include "mckc/supply.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "mckc/lp.hpp"
#include "mckc/oracle.hpp"

namespace mckc {

namespace {

std::vector<int> capacity_order(const CckpInstance& inst) {
  std::vector<int> ord(inst.num_types());
  std::iota(ord.begin(), ord.end(), 0);
  std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
    if (inst.job_types[a] != inst.job_types[b]) return inst.job_types[a] < inst.job_types[b];
    return a < b;
  });
  return ord;
}

// Best-effort exact repair of a snapped assignment witness: (A1) is forced
// exactly by column scaling, then (A2) deficits are refilled from spare
// supply.  Tiny (A2) shortfalls can survive when the point is tight.
void exactify_ass_witness(const CckpInstance& inst, const std::vector<Rat>& supply,
                          AssignmentPoint& z) {
  const int m = inst.num_machines();
  const int n = inst.num_types();
  for (int j = 0; j < n; ++j) {
    Rat usage(0);
    for (int i = 0; i < m; ++i) usage += z[i][j];
    if (usage > supply[j]) {
      Rat f = supply[j] / usage;
      for (int i = 0; i < m; ++i) z[i][j] *= f;
    }
  }
  std::vector<Rat> spare(n);
  for (int j = 0; j < n; ++j) {
    Rat usage(0);
    for (int i = 0; i < m; ++i) usage += z[i][j];
    spare[j] = supply[j] - usage;
  }
  for (int i = 0; i < m; ++i) {
    Rat got(0);
    for (int j = 0; j < n; ++j) got += z[i][j] * min(inst.job_types[j], inst.machines[i].demand);
    if (got >= inst.machines[i].demand) continue;
    for (int j = n - 1; j >= 0 && got < inst.machines[i].demand; --j) {
      if (!(spare[j] > Rat(0))) continue;
      Rat unit = min(inst.job_types[j], inst.machines[i].demand);
      if (!(unit > Rat(0))) continue;
      Rat want = (inst.machines[i].demand - got) / unit;
      Rat add = min(spare[j], want);
      z[i][j] += add;
      spare[j] -= add;
      got += add * unit;
    }
  }
}

}  // namespace

PAssResult p_ass_membership(const CckpInstance& inst, const std::vector<Rat>& supply_point) {
  if (int(supply_point.size()) != inst.num_types())
    throw std::invalid_argument("p_ass_membership: supply length mismatch");
  const int m = inst.num_machines();
  const int n = inst.num_types();

  lp::LinearSystem sys;
  std::vector<std::vector<int>> var(m, std::vector<int>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      var[i][j] = sys.add_variable("z_" + std::to_string(i) + "_" + std::to_string(j));
  // (A1)
  for (int j = 0; j < n; ++j) {
    lp::Constraint c;
    c.rel = lp::Rel::Le;
    c.rhs = supply_point[j].to_double();
    for (int i = 0; i < m; ++i) c.coeffs.push_back({var[i][j], 1.0});
    c.name = "A1_" + std::to_string(j);
    sys.add_constraint(std::move(c));
  }
  // (A2)
  for (int i = 0; i < m; ++i) {
    lp::Constraint c;
    c.rel = lp::Rel::Ge;
    c.rhs = inst.machines[i].demand.to_double();
    for (int j = 0; j < n; ++j)
      c.coeffs.push_back(
          {var[i][j], min(inst.job_types[j], inst.machines[i].demand).to_double()});
    c.name = "A2_" + std::to_string(i);
    sys.add_constraint(std::move(c));
  }

  lp::LpOutcome out = lp::solve(sys);
  PAssResult res;
  if (out.status == lp::LpStatus::Feasible) {
    AssignmentPoint z(m, std::vector<Rat>(n));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        z[i][j] = Rat::from_double(std::max(0.0, out.point[var[i][j]]));
    exactify_ass_witness(inst, supply_point, z);
    res.witness = std::move(z);
    return res;
  }
  if (out.status != lp::LpStatus::Infeasible)
    throw std::logic_error("p_ass_membership: unexpected LP status");

  const auto& cert = *out.certificate;
  SeparatingHyperplane h;
  h.alpha.assign(n, Rat(0));
  h.beta.assign(m, Rat(0));
  // (A1) rows carry multipliers <= 0 (Le), (A2) rows >= 0 (Ge); scale so
  // the largest beta is 1, matching the greedy certificates.
  double scale = 0.0;
  for (int i = 0; i < m; ++i) scale = std::max(scale, cert.row_multipliers[n + i]);
  if (scale <= 0.0) {
    for (int j = 0; j < n; ++j) scale = std::max(scale, -cert.row_multipliers[j]);
  }
  if (scale <= 0.0) throw std::logic_error("p_ass_membership: degenerate certificate");
  for (int j = 0; j < n; ++j)
    h.alpha[j] = Rat::from_double(std::max(0.0, -cert.row_multipliers[j] / scale));
  for (int i = 0; i < m; ++i)
    h.beta[i] = Rat::from_double(std::max(0.0, cert.row_multipliers[n + i] / scale));
  // Repair the rational snap so (F2) holds exactly: any alpha_j below the
  // exact requirement is lifted to it.  With (F2) exact, every feasible
  // supply satisfies  sum alpha s >= sum beta D  exactly.
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i)
      h.alpha[j] = max(h.alpha[j], h.beta[i] * min(inst.job_types[j], inst.machines[i].demand));
  h.rhs = Rat(0);
  for (int i = 0; i < m; ++i) h.rhs += h.beta[i] * inst.machines[i].demand;
  if (!h.violated_by(supply_point))
    throw std::logic_error("p_ass_membership: hyperplane lost strictness after snapping");
  res.hyperplane = std::move(h);
  return res;
}

namespace {

// Shared cardinality-knapsack DP on the 10^4-cell alpha grid (values
// rounded down).  dp[count][units] = best weight at exactly that grid
// cost.  Besides the usual argmax it answers "cheapest grid cost whose
// best weight reaches a target", which the separation oracle uses to cap
// its duals into exact validity.
struct KnapDp {
  static constexpr int kCells = 10000;
  int f = 0;
  std::vector<int> w;
  std::vector<std::vector<double>> dp;
  std::vector<std::vector<std::pair<int, int>>> take;

  KnapDp(const std::vector<Rat>& values, const std::vector<Rat>& weights,
         const std::vector<std::int64_t>& copies, std::int64_t cardinality, const Rat& budget) {
    const int n = int(values.size());
    if (int(weights.size()) != n || int(copies.size()) != n)
      throw std::invalid_argument("max_knapsack_cardinality: length mismatch");
    if (cardinality > 500 || (cardinality + 1) * std::int64_t(kCells) > 6000000)
      throw OracleGuard("max_knapsack_cardinality: cardinality x grid guard exceeded");
    f = int(std::max<std::int64_t>(cardinality, 0));

    auto grid = [&](const Rat& a) -> int {
      Rat scaled = a * Rat(kCells) / budget;
      std::int64_t g = scaled.floor();
      return int(std::min<std::int64_t>(std::max<std::int64_t>(g, 0), kCells));
    };
    w.resize(n);
    std::vector<double> gain(n);
    for (int j = 0; j < n; ++j) {
      w[j] = grid(values[j]);
      gain[j] = weights[j].to_double();
    }

    const int C = kCells;
    bool unbounded = true;
    for (int j = 0; j < n; ++j)
      if (copies[j] < f) unbounded = false;

    dp.assign(f + 1, std::vector<double>(C, -1.0));
    take.assign(f + 1, std::vector<std::pair<int, int>>(C, {-1, 0}));
    dp[0][0] = 0.0;

    if (unbounded) {
      for (int cnt = 1; cnt <= f; ++cnt)
        for (int b = 0; b < C; ++b) {
          double best = -1.0;
          int bj = -1;
          for (int j = 0; j < n; ++j) {
            if (b < w[j] || dp[cnt - 1][b - w[j]] < 0) continue;
            double cand = dp[cnt - 1][b - w[j]] + gain[j];
            if (cand > best) {
              best = cand;
              bj = j;
            }
          }
          if (bj >= 0 && best > dp[cnt][b]) {
            dp[cnt][b] = best;
            take[cnt][b] = {bj, 1};
          }
        }
    } else {
      if (f > 64) throw OracleGuard("max_knapsack_cardinality: bounded-copies guard (f > 64)");
      for (int j = 0; j < n; ++j) {
        std::int64_t left = std::min<std::int64_t>(copies[j], f);
        std::int64_t chunk = 1;
        while (left > 0) {
          std::int64_t c = std::min(chunk, left);
          left -= c;
          chunk <<= 1;
          const long dw = long(w[j]) * c;
          const double dg = gain[j] * double(c);
          if (dw >= C) continue;
          for (int cnt = f; cnt >= int(c); --cnt)
            for (int b = C - 1; b >= int(dw); --b) {
              if (dp[cnt - c][b - dw] < 0) continue;
              double cand = dp[cnt - c][b - dw] + dg;
              if (cand > dp[cnt][b] + 1e-12) {
                dp[cnt][b] = cand;
                take[cnt][b] = {j, int(c)};
              }
            }
        }
      }
    }
  }

  Config backtrack(int cnt, int b) const {
    std::vector<int> picked;
    while (cnt > 0 || b > 0) {
      auto [j, c] = take[cnt][b];
      if (j < 0) break;
      for (int q = 0; q < c; ++q) picked.push_back(j);
      cnt -= c;
      b -= c * w[j];
    }
    return make_config(std::move(picked));
  }

  std::optional<Config> best_config() const {
    double best = -1.0;
    int bc = -1, bb = -1;
    for (int cnt = 0; cnt <= f; ++cnt)
      for (int b = 0; b < kCells; ++b)
        if (dp[cnt][b] > best + 1e-15) {
          best = dp[cnt][b];
          bc = cnt;
          bb = b;
        }
    if (bc < 0) return std::nullopt;
    return backtrack(bc, bb);
  }

  // cheapest grid cost at which some config reaches `target` weight; also
  // reports the achieving state for backtracking.  -1 when unreachable
  // within the strict budget window.
  int min_units_reaching(double target, int* out_cnt = nullptr) const {
    for (int b = 0; b < kCells; ++b)
      for (int cnt = 0; cnt <= f; ++cnt)
        if (dp[cnt][b] >= target - 1e-9) {
          if (out_cnt) *out_cnt = cnt;
          return b;
        }
    return -1;
  }
};

}  // namespace

std::optional<Config> max_knapsack_cardinality(const std::vector<Rat>& values,
                                               const std::vector<Rat>& weights,
                                               const std::vector<std::int64_t>& copies,
                                               std::int64_t cardinality, const Rat& budget) {
  if (!(budget > Rat(0))) return std::nullopt;  // even the empty set misses a strict 0 budget
  if (cardinality <= 0) return Config{};
  KnapDp dp(values, weights, copies, cardinality, budget);
  return dp.best_config();
}

PConfResult p_conf_separation(const CckpInstance& inst, const std::vector<Rat>& supply_point,
                              double eps, int max_rounds) {
  if (int(supply_point.size()) != inst.num_types())
    throw std::invalid_argument("p_conf_separation: supply length mismatch");
  if (!(eps > 0)) throw std::invalid_argument("p_conf_separation: eps must be positive");
  for (const auto& mc : inst.machines)
    if (mc.cardinality == CckpInstance::kUnbounded)
      throw std::invalid_argument("p_conf_separation: finite cardinalities required");
  const int m = inst.num_machines();
  const int n = inst.num_types();
  const Rat eps_rat = Rat::from_double(eps);
  std::vector<Rat> ctilde(n);
  for (int j = 0; j < n; ++j) ctilde[j] = (Rat(1) + eps_rat) * inst.job_types[j];

  // Seed configurations: greedy largest-first fill per machine.
  std::vector<int> desc = capacity_order(inst);
  std::reverse(desc.begin(), desc.end());
  std::vector<std::set<Config>> columns(m);
  for (int i = 0; i < m; ++i) {
    std::vector<int> pick;
    Rat cap(0);
    const Rat need = inst.machines[i].demand;
    while (std::int64_t(pick.size()) < inst.machines[i].cardinality && cap < need) {
      pick.push_back(desc[0]);
      cap += ctilde[desc[0]];
    }
    if (cap < need) {
      // No configuration can satisfy this machine even with slack: the
      // polyhedron is empty and "0 >= 1" separates everything.
      PConfResult res;
      res.accepted = false;
      res.hyperplane.alpha.assign(n, Rat(0));
      res.hyperplane.beta.assign(m, Rat(0));
      res.hyperplane.beta[i] = Rat(1);
      res.hyperplane.rhs = Rat(1);
      return res;
    }
    columns[i].insert(make_config(std::move(pick)));
  }

  PConfResult res;
  for (int round = 0; round < max_rounds; ++round) {
    res.rounds = round + 1;
    // Restricted primal over the generated columns.
    lp::LinearSystem sys;
    std::vector<std::vector<std::pair<Config, int>>> vars(m);
    for (int i = 0; i < m; ++i)
      for (const Config& cfg : columns[i])
        vars[i].push_back({cfg, sys.add_variable("z")});
    for (int i = 0; i < m; ++i) {
      lp::Constraint c;
      c.rel = lp::Rel::Eq;
      c.rhs = 1.0;
      for (auto& [cfg, v] : vars[i]) c.coeffs.push_back({v, 1.0});
      sys.add_constraint(std::move(c));
    }
    for (int j = 0; j < n; ++j) {
      lp::Constraint c;
      c.rel = lp::Rel::Le;
      c.rhs = supply_point[j].to_double();
      for (int i = 0; i < m; ++i)
        for (auto& [cfg, v] : vars[i])
          if (int cnt = config_count(cfg, j); cnt > 0) c.coeffs.push_back({v, double(cnt)});
      sys.add_constraint(std::move(c));
    }
    lp::LpOutcome out = lp::solve(sys);

    if (out.status == lp::LpStatus::Feasible) {
      res.accepted = true;
      res.z.z.assign(m, {});
      for (int i = 0; i < m; ++i) {
        Rat row(0);
        for (auto& [cfg, v] : vars[i]) {
          Rat mass = Rat::from_double(std::max(0.0, out.point[v]));
          if (mass > Rat(0)) {
            res.z.z[i].push_back({cfg, mass});
            row += mass;
          }
        }
        for (auto& [cfg, mass] : res.z.z[i]) mass /= row;  // exact (C1)
      }
      // Snapping can leave hair-thin (C2) overuse; push the excess into
      // config variants that swap the overused type for a larger one with
      // spare supply.  Best effort -- callers re-validate.
      std::vector<int> asc = capacity_order(inst);
      std::vector<Rat> usage(n, Rat(0));
      for (int i = 0; i < m; ++i)
        for (auto& [cfg, mass] : res.z.z[i])
          for (auto [ty, cnt] : cfg) usage[ty] += mass * Rat(cnt);
      for (std::size_t a = 0; a < asc.size(); ++a) {
        int j = asc[a];
        if (!(usage[j] > supply_point[j])) continue;
        Rat excess = usage[j] - supply_point[j];
        for (std::size_t b = a + 1; b < asc.size() && excess > Rat(0); ++b) {
          int jn = asc[b];
          Rat spare = supply_point[jn] - usage[jn];
          if (!(spare > Rat(0))) continue;
          for (int i = 0; i < m && excess > Rat(0) && spare > Rat(0); ++i) {
            for (std::size_t ci = 0; ci < res.z.z[i].size() && excess > Rat(0) && spare > Rat(0);
                 ++ci) {
              auto [cfg, mass] = res.z.z[i][ci];
              if (config_count(cfg, j) == 0 || !(mass > Rat(0))) continue;
              Rat delta = min(min(mass, excess), spare);
              Config swapped;
              for (auto [ty, nn] : cfg) {
                if (ty == j && nn >= 1) {
                  if (nn > 1) swapped.emplace_back(ty, nn - 1);
                } else {
                  swapped.emplace_back(ty, nn);
                }
              }
              bool put = false;
              for (auto& [ty, nn] : swapped)
                if (ty == jn) {
                  ++nn;
                  put = true;
                }
              if (!put) {
                swapped.emplace_back(jn, 1);
                std::sort(swapped.begin(), swapped.end());
              }
              res.z.z[i][ci].second -= delta;
              bool merged = false;
              for (auto& [c2, m2] : res.z.z[i])
                if (c2 == swapped) {
                  m2 += delta;
                  merged = true;
                  break;
                }
              if (!merged) res.z.z[i].push_back({swapped, delta});
              usage[j] -= delta;
              usage[jn] += delta;
              spare -= delta;
              excess -= delta;
            }
          }
        }
      }
      return res;
    }
    if (out.status != lp::LpStatus::Infeasible)
      throw std::logic_error("p_conf_separation: unexpected LP status");

    // The restricted dual point: beta from the (C1) equalities, alpha from
    // the (C2) rows (Le rows carry multipliers <= 0).
    std::vector<Rat> beta(m), alpha(n);
    for (int i = 0; i < m; ++i)
      beta[i] = Rat::from_double(out.certificate->row_multipliers[i]);
    for (int j = 0; j < n; ++j)
      alpha[j] =
          Rat::from_double(std::max(0.0, -out.certificate->row_multipliers[m + j]));

    // Price: per machine, the best config under the strict alpha-budget.
    // Identical machines share the answer, which matters for the gap
    // instances with hundreds of clones.  Alongside the argmax we record a
    // floor-grid lower bound v_lo on min{sum alpha n(S,j) : S feasible},
    // which caps beta into exact hyperplane validity.
    struct Priced {
      std::optional<Config> violated;
      Rat beta_cap;           // min(beta, v_lo), exact
      std::optional<Config> cheapest;  // a config achieving the v_lo state
    };
    bool added = false;
    std::map<std::pair<Rat, std::pair<std::int64_t, Rat>>, Priced> cache;
    std::vector<const Priced*> priced(m, nullptr);
    for (int i = 0; i < m; ++i) {
      if (!(beta[i] > Rat(0))) continue;
      auto key = std::make_pair(inst.machines[i].demand,
                                std::make_pair(inst.machines[i].cardinality, beta[i]));
      auto it = cache.find(key);
      if (it == cache.end()) {
        std::vector<std::int64_t> copies(n, inst.machines[i].cardinality);
        KnapDp dp(alpha, ctilde, copies, inst.machines[i].cardinality, beta[i]);
        Priced pr;
        pr.beta_cap = beta[i];
        auto cfg = dp.best_config();
        if (cfg && !(config_capacity(inst, *cfg) * (Rat(1) + eps_rat) < inst.machines[i].demand))
          pr.violated = cfg;
        int cnt = 0;
        int units = dp.min_units_reaching(inst.machines[i].demand.to_double(), &cnt);
        if (units >= 0) {
          pr.beta_cap = min(beta[i], Rat(units) * beta[i] / Rat(KnapDp::kCells));
          pr.cheapest = dp.backtrack(cnt, units);
        }
        it = cache.emplace(key, std::move(pr)).first;
      }
      priced[i] = &it->second;
      if (it->second.violated && columns[i].insert(*it->second.violated).second) added = true;
    }
    if (!added) {
      // No genuinely new violated column: emit the hyperplane with each
      // beta capped by its exact dual-cost lower bound.
      SeparatingHyperplane h;
      h.alpha = alpha;
      h.beta = beta;
      for (int i = 0; i < m; ++i)
        if (priced[i]) h.beta[i] = priced[i]->beta_cap;
      h.rhs = Rat(0);
      for (const Rat& b : h.beta) h.rhs += b;
      if (h.violated_by(supply_point)) {
        // keep the violation margin around unity so downstream double
        // arithmetic never mistakes the cut for satisfied
        Rat margin = h.machine_side() - h.job_side(supply_point);
        if (margin < Rat(1, 1000)) {
          Rat fscale = Rat(1) / margin;
          for (Rat& a : h.alpha) a *= fscale;
          for (Rat& b : h.beta) b *= fscale;
          h.rhs *= fscale;
        }
        res.accepted = false;
        res.hyperplane = std::move(h);
        return res;
      }
      // The grid ate the whole margin; seed the cheapest reaching configs
      // as columns and keep going.
      for (int i = 0; i < m; ++i)
        if (priced[i] && priced[i]->cheapest &&
            columns[i].insert(*priced[i]->cheapest).second)
          added = true;
      if (!added)
        throw RoundLimit("p_conf_separation: dual margin vanished under the value grid");
    }
  }
  throw RoundLimit("p_conf_separation: column generation exceeded " +
                   std::to_string(max_rounds) + " rounds");
}

bool suffix_dominates(const CckpInstance& inst, const std::vector<Rat>& t,
                      const std::vector<Rat>& s) {
  std::vector<int> ord = capacity_order(inst);
  Rat ts(0), ss(0);
  for (int k = int(ord.size()) - 1; k >= 0; --k) {
    ts += t[ord[k]];
    ss += s[ord[k]];
    if (ts < ss) return false;
  }
  return true;
}

AssignmentPoint shift_witness_ass(const CckpInstance& inst, AssignmentPoint z,
                                  const std::vector<Rat>& s, const std::vector<Rat>& t) {
  if (!suffix_dominates(inst, t, s))
    throw std::invalid_argument("shift_witness_ass: target does not suffix-dominate");
  std::vector<int> ord = capacity_order(inst);
  const int m = inst.num_machines();
  for (std::size_t k = 0; k + 1 < ord.size(); ++k) {
    int j = ord[k], jn = ord[k + 1];
    Rat usage(0);
    for (int i = 0; i < m; ++i) usage += z[i][j];
    Rat excess = usage - t[j];
    for (int i = 0; i < m && excess > Rat(0); ++i) {
      Rat moved = min(z[i][j], excess);
      z[i][j] -= moved;
      z[i][jn] += moved;
      excess -= moved;
    }
  }
  return z;
}

ConfLpSolution shift_witness_conf(const CckpInstance& inst, ConfLpSolution z,
                                  const std::vector<Rat>& s, const std::vector<Rat>& t) {
  if (!suffix_dominates(inst, t, s))
    throw std::invalid_argument("shift_witness_conf: target does not suffix-dominate");
  std::vector<int> ord = capacity_order(inst);
  const int m = int(z.z.size());
  for (std::size_t k = 0; k + 1 < ord.size(); ++k) {
    int j = ord[k], jn = ord[k + 1];
    Rat usage(0);
    for (int i = 0; i < m; ++i)
      for (auto& [cfg, mass] : z.z[i]) usage += mass * Rat(config_count(cfg, j));
    Rat excess = usage - t[j];
    for (int i = 0; i < m && excess > Rat(0); ++i) {
      // repeatedly move one copy of j to jn inside configs that hold j
      bool progress = true;
      while (excess > Rat(0) && progress) {
        progress = false;
        for (std::size_t ci = 0; ci < z.z[i].size() && excess > Rat(0); ++ci) {
          auto [cfg, mass] = z.z[i][ci];
          int cnt = config_count(cfg, j);
          if (cnt == 0 || !(mass > Rat(0))) continue;
          // moving delta mass of this config moves delta per copy step
          Rat delta = min(mass, excess);
          Config swapped;
          for (auto [ty, nn] : cfg) {
            if (ty == j) {
              if (nn > 1) swapped.emplace_back(ty, nn - 1);
            } else {
              swapped.emplace_back(ty, nn);
            }
          }
          bool put = false;
          for (auto& [ty, nn] : swapped)
            if (ty == jn) {
              ++nn;
              put = true;
            }
          if (!put) {
            swapped.emplace_back(jn, 1);
            std::sort(swapped.begin(), swapped.end());
          }
          z.z[i][ci].second -= delta;
          bool merged = false;
          for (auto& [c2, m2] : z.z[i])
            if (c2 == swapped) {
              m2 += delta;
              merged = true;
              break;
            }
          if (!merged) z.z[i].push_back({swapped, delta});
          excess -= delta;
          progress = true;
        }
      }
    }
  }
  for (auto& row : z.z)
    row.erase(std::remove_if(row.begin(), row.end(),
                             [](const auto& p) { return p.second == Rat(0); }),
              row.end());
  return z;
}

}  // namespace mckc
