#include "mckc/maxmin.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

#include "mckc/flow.hpp"

namespace mckc {

std::optional<std::string> check_allocation(const CckpInstance& inst, const SupplyVector& supply,
                                            const Allocation& a) {
  if (int(a.per_machine.size()) != inst.num_machines()) return "allocation: machine count mismatch";
  std::vector<std::int64_t> used(inst.num_types(), 0);
  for (int i = 0; i < inst.num_machines(); ++i) {
    if (inst.machines[i].cardinality != CckpInstance::kUnbounded &&
        std::int64_t(a.per_machine[i].size()) > inst.machines[i].cardinality)
      return "allocation: machine " + std::to_string(i) + " over cardinality";
    for (int t : a.per_machine[i]) {
      if (t < 0 || t >= inst.num_types()) return "allocation: bad type index";
      ++used[t];
    }
  }
  for (int j = 0; j < inst.num_types(); ++j)
    if (used[j] > supply.counts[j]) return "allocation: type " + std::to_string(j) + " over supply";
  return std::nullopt;
}

bool verify_farkas(const CckpInstance& inst, const SupplyVector& supply, const FarkasCert& cert) {
  if (int(cert.alpha.size()) != inst.num_types() || int(cert.beta.size()) != inst.num_machines())
    return false;
  for (const Rat& b : cert.beta)
    if (b < Rat(0)) return false;  // (F3)
  for (const Rat& a : cert.alpha)
    if (a < Rat(0)) return false;
  for (int i = 0; i < inst.num_machines(); ++i)
    for (int j = 0; j < inst.num_types(); ++j)
      if (cert.beta[i] * min(inst.job_types[j], inst.machines[i].demand) > cert.alpha[j])
        return false;  // (F2)
  Rat lhs(0), rhs(0);
  for (int i = 0; i < inst.num_machines(); ++i) lhs += cert.beta[i] * inst.machines[i].demand;
  for (int j = 0; j < inst.num_types(); ++j) rhs += Rat(supply.counts[j]) * cert.alpha[j];
  return lhs > rhs;  // (F1), strict
}

GreedyOutcome greedy_qcmin(const CckpInstance& inst, const SupplyVector& supply) {
  if (!inst.is_qcmin())
    throw std::invalid_argument("greedy_qcmin: instance has cardinality constraints");
  if (int(supply.counts.size()) != inst.num_types())
    throw std::invalid_argument("greedy_qcmin: supply length mismatch");
  const int m = inst.num_machines();

  // Machines in decreasing demand, job copies in decreasing capacity.
  std::vector<int> morder(m);
  std::iota(morder.begin(), morder.end(), 0);
  std::stable_sort(morder.begin(), morder.end(), [&](int a, int b) {
    return inst.machines[a].demand > inst.machines[b].demand;
  });
  std::vector<int> copies;  // type index per copy
  for (int j = 0; j < inst.num_types(); ++j)
    for (std::int64_t c = 0; c < supply.counts[j]; ++c) copies.push_back(j);
  std::stable_sort(copies.begin(), copies.end(),
                   [&](int a, int b) { return inst.job_types[a] > inst.job_types[b]; });

  std::vector<std::vector<int>> assigned(m);  // by sorted position
  std::vector<Rat> filled(m, Rat(0));
  std::size_t jp = 0;
  int pos = 0;
  while (pos < m && jp < copies.size()) {
    const Rat half = inst.machines[morder[pos]].demand / Rat(2);
    if (filled[pos] < half) {
      assigned[pos].push_back(copies[jp]);
      filled[pos] += inst.job_types[copies[jp]];
      ++jp;
    } else {
      ++pos;  // happy
    }
  }
  if (pos < m && !(filled[pos] < inst.machines[morder[pos]].demand / Rat(2))) ++pos;

  GreedyOutcome out;
  if (pos >= m) {
    Allocation alloc;
    alloc.per_machine.assign(m, {});
    for (int k = 0; k < m; ++k) alloc.per_machine[morder[k]] = assigned[k];
    // leftover copies stay unassigned; supply is an upper bound
    out.allocation = std::move(alloc);
    return out;
  }

  // First unhappy machine (in sorted order) is `pos`; remaining copies all
  // belong to its bucket in the accounting.
  const int istar = pos;
  // Overloaded: a single assigned job of capacity >= demand.
  auto overloaded = [&](int k) {
    return assigned[k].size() == 1 &&
           inst.job_types[assigned[k][0]] >= inst.machines[morder[k]].demand;
  };
  std::vector<Rat> beta_sorted(m, Rat(0));
  beta_sorted[0] = Rat(1);
  for (int k = 1; k <= istar && k < m; ++k) {
    const Rat& dk = inst.machines[morder[k]].demand;
    const Rat& dprev = inst.machines[morder[k - 1]].demand;
    if (!overloaded(k))
      beta_sorted[k] = beta_sorted[k - 1];
    else if (overloaded(k - 1))
      beta_sorted[k] = beta_sorted[k - 1] * dprev / dk;
    else
      beta_sorted[k] = beta_sorted[k - 1] * inst.job_types[assigned[k][0]] / dk;
  }

  FarkasCert cert;
  cert.beta.assign(m, Rat(0));
  for (int k = 0; k <= istar && k < m; ++k) cert.beta[morder[k]] = beta_sorted[k];
  cert.alpha.assign(inst.num_types(), Rat(0));
  for (int j = 0; j < inst.num_types(); ++j) {
    Rat a(0);
    for (int i = 0; i < m; ++i)
      a = max(a, cert.beta[i] * min(inst.job_types[j], inst.machines[i].demand));
    cert.alpha[j] = a;
  }
  if (!verify_farkas(inst, supply, cert))
    throw std::logic_error("greedy_qcmin produced an invalid Farkas certificate");
  out.certificate = std::move(cert);
  return out;
}

std::optional<std::string> check_assignment_point(const CckpInstance& inst,
                                                  const SupplyVector& supply,
                                                  const AssignmentPoint& z, const Rat& slack) {
  if (int(z.size()) != inst.num_machines()) return "z: machine count mismatch";
  for (int i = 0; i < inst.num_machines(); ++i) {
    if (int(z[i].size()) != inst.num_types()) return "z: type count mismatch";
    Rat row(0);
    for (int j = 0; j < inst.num_types(); ++j) {
      if (z[i][j] < Rat(0)) return "z: negative entry";
      row += z[i][j];
    }
    if (inst.machines[i].cardinality != CckpInstance::kUnbounded &&
        row > Rat(inst.machines[i].cardinality) + slack)
      return "z: (A4) violated at machine " + std::to_string(i);
  }
  for (int j = 0; j < inst.num_types(); ++j) {
    Rat col(0);
    for (int i = 0; i < inst.num_machines(); ++i) col += z[i][j];
    if (col > Rat(supply.counts[j]) + slack)
      return "z: (A1) violated at type " + std::to_string(j);
  }
  return std::nullopt;
}

Allocation shmoys_tardos_round(const CckpInstance& inst, const SupplyVector& supply,
                               const AssignmentPoint& z) {
  // Allow the hair-thin violations that double->rational snapping leaves.
  if (auto bad = check_assignment_point(inst, supply, z, Rat(1, 1000000)))
    throw std::invalid_argument("shmoys_tardos_round: " + *bad);
  const int m = inst.num_machines();

  // Machine copies, filled in decreasing capacity order.
  struct CopyShare {
    int machine, copy, type;
    Rat mass;
  };
  std::vector<CopyShare> shares;
  std::vector<std::vector<int>> copy_ids(m);  // node ids per machine copy
  int n_copies = 0;
  std::vector<bool> saturated;

  for (int i = 0; i < m; ++i) {
    std::vector<int> types;
    for (int j = 0; j < inst.num_types(); ++j)
      if (z[i][j] > Rat(0)) types.push_back(j);
    std::sort(types.begin(), types.end(), [&](int a, int b) {
      if (inst.job_types[a] != inst.job_types[b]) return inst.job_types[a] > inst.job_types[b];
      return a < b;
    });
    Rat level(0);  // filled fraction of the current copy
    int cur = -1;
    auto open_copy = [&]() {
      copy_ids[i].push_back(n_copies++);
      saturated.push_back(false);
      cur = copy_ids[i].back();
      level = Rat(0);
    };
    for (int j : types) {
      Rat rest = z[i][j];
      while (rest > Rat(0)) {
        if (cur < 0 || level == Rat(1)) {
          if (cur >= 0) saturated[cur] = true;
          open_copy();
        }
        Rat take = min(rest, Rat(1) - level);
        shares.push_back({i, cur, j, take});
        level += take;
        rest -= take;
      }
    }
    if (cur >= 0 && level == Rat(1)) saturated[cur] = true;
  }

  // Integral matching of saturated copies into the job supply, over the
  // support edges of the fractional copy assignment.
  std::map<std::pair<int, int>, bool> support;  // (copy, type)
  for (const auto& s : shares) support[{s.copy, s.type}] = true;
  const int J = inst.num_types();
  // nodes: 0 source, 1..n_copies copies, then types, then sink
  MaxFlow mf(1 + n_copies + J + 1);
  const int sink = 1 + n_copies + J;
  int n_saturated = 0;
  for (int c = 0; c < n_copies; ++c)
    if (saturated[c]) {
      mf.add_edge(0, 1 + c, 1);
      ++n_saturated;
    }
  std::vector<std::vector<std::pair<int, int>>> copy_edges(n_copies);  // (type, handle)
  for (const auto& [key, _] : support) {
    auto [c, t] = key;
    if (saturated[c]) copy_edges[c].emplace_back(t, mf.add_edge(1 + c, 1 + n_copies + t, 1));
  }
  for (int t = 0; t < J; ++t) mf.add_edge(1 + n_copies + t, sink, supply.counts[t]);
  std::int64_t flow = mf.run(0, sink);
  if (flow != n_saturated)
    throw std::logic_error("shmoys_tardos_round: saturated copies not all matched");

  Allocation alloc;
  alloc.per_machine.assign(m, {});
  std::vector<std::int64_t> left(supply.counts.begin(), supply.counts.end());
  std::vector<int> copy_machine(n_copies, -1);
  for (int i = 0; i < m; ++i)
    for (int c : copy_ids[i]) copy_machine[c] = i;
  for (int c = 0; c < n_copies; ++c)
    for (auto [t, h] : copy_edges[c])
      if (mf.flow_on(h) == 1) {
        alloc.per_machine[copy_machine[c]].push_back(t);
        --left[t];
      }

  // Partial copies pick up leftovers from their own support, best first.
  for (int i = 0; i < m; ++i) {
    for (int c : copy_ids[i]) {
      if (saturated[c]) continue;
      std::vector<int> cand;
      for (const auto& s : shares)
        if (s.copy == c) cand.push_back(s.type);
      std::sort(cand.begin(), cand.end(), [&](int a, int b) {
        if (inst.job_types[a] != inst.job_types[b]) return inst.job_types[a] > inst.job_types[b];
        return a < b;
      });
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      for (int t : cand)
        if (left[t] > 0) {
          alloc.per_machine[i].push_back(t);
          --left[t];
          break;
        }
    }
  }
  if (auto bad = check_allocation(inst, supply, alloc))
    throw std::logic_error("shmoys_tardos_round: " + *bad);
  return alloc;
}

std::vector<std::vector<bool>> reduce_to_restricted(const CckpInstance& inst) {
  std::vector<std::vector<bool>> adm(inst.num_machines(),
                                     std::vector<bool>(inst.num_types(), false));
  for (int i = 0; i < inst.num_machines(); ++i)
    for (int j = 0; j < inst.num_types(); ++j) {
      if (inst.machines[i].cardinality == CckpInstance::kUnbounded)
        adm[i][j] = true;
      else
        adm[i][j] = inst.job_types[j] >=
                    inst.machines[i].demand / (Rat(2) * Rat(inst.machines[i].cardinality));
    }
  return adm;
}

Config make_config(std::vector<int> types) {
  std::sort(types.begin(), types.end());
  Config c;
  for (int t : types) {
    if (!c.empty() && c.back().first == t)
      ++c.back().second;
    else
      c.emplace_back(t, 1);
  }
  return c;
}

Rat config_capacity(const CckpInstance& inst, const Config& c) {
  Rat s(0);
  for (auto [t, n] : c) s += Rat(n) * inst.job_types[t];
  return s;
}

std::int64_t config_size(const Config& c) {
  std::int64_t s = 0;
  for (auto [t, n] : c) s += n;
  return s;
}

int config_count(const Config& c, int type) {
  for (auto [t, n] : c)
    if (t == type) return n;
  return 0;
}

std::optional<std::string> check_conf_solution(const CckpInstance& inst,
                                               const SupplyVector& supply,
                                               const ConfLpSolution& sol,
                                               const Rat& demand_scale, const Rat& slack) {
  if (int(sol.z.size()) != inst.num_machines()) return "conf z: machine count mismatch";
  std::vector<Rat> usage(inst.num_types(), Rat(0));
  for (int i = 0; i < inst.num_machines(); ++i) {
    Rat row(0);
    for (const auto& [cfg, mass] : sol.z[i]) {
      if (mass < Rat(0)) return "conf z: negative mass";
      if (mass == Rat(0)) continue;
      row += mass;
      if (inst.machines[i].cardinality != CckpInstance::kUnbounded &&
          config_size(cfg) > inst.machines[i].cardinality)
        return "conf z: (C3) cardinality violated at machine " + std::to_string(i);
      if (config_capacity(inst, cfg) < inst.machines[i].demand / demand_scale)
        return "conf z: (C3) capacity violated at machine " + std::to_string(i);
      for (auto [t, n] : cfg) usage[t] += mass * Rat(n);
    }
    if (abs(row - Rat(1)) > slack)
      return "conf z: (C1) violated at machine " + std::to_string(i);
  }
  for (int j = 0; j < inst.num_types(); ++j)
    if (usage[j] > Rat(supply.counts[j]) + slack)
      return "conf z: (C2) violated at type " + std::to_string(j);
  return std::nullopt;
}

}  // namespace mckc
