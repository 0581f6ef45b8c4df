#include "mckc/gaps.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>

#include "mckc/oracle.hpp"

namespace mckc {

MckcGap gen_mckc_gap(int K) {
  if (K < 1) throw std::invalid_argument("gen_mckc_gap: K >= 1");
  MckcGap out;
  MckcInstance& inst = out.instance;
  for (int k = 0; k < K; ++k) {
    inst.facility_names.push_back("a" + std::to_string(k + 1));
    inst.facility_names.push_back("b" + std::to_string(k + 1));
  }
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < K; ++j)
      inst.client_names.push_back("c" + std::to_string(k + 1) + "_" + std::to_string(j + 1));
  const int n = inst.num_vertices();
  auto group_of = [&](int v) {
    return v < 2 * K ? v / 2 : (v - 2 * K) / K;
  };
  inst.distance.assign(n, std::vector<Dist>(n, Dist::infinity()));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b)
        inst.distance[a][b] = Dist(Rat(0));
      else if (group_of(a) == group_of(b))
        inst.distance[a][b] = Dist(Rat(1));
    }
  inst.client_weight.assign(inst.num_clients(), Rat(1));
  // K unit capacities; K-1 big ones of capacity K (dropped when K = 1,
  // where the two values would collide)
  inst.profile.push_back({K, Rat(1)});
  if (K > 1) inst.profile.push_back({K - 1, Rat(K)});
  inst.soft_capacities = false;

  FractionalSolution& w = out.witness;
  w.radius = Rat(1);
  const int P = inst.num_types();
  w.y.assign(inst.num_facilities(), std::vector<Rat>(P, Rat(0)));
  w.x.assign(inst.num_facilities(),
             std::vector<std::vector<Rat>>(inst.num_clients(), std::vector<Rat>(P, Rat(0))));
  for (int k = 0; k < K; ++k) {
    int a = 2 * k, b = 2 * k + 1;
    if (K > 1) w.y[a][1] = Rat(1) - Rat(1, K);
    w.y[b][0] = Rat(1);
    for (int j = 0; j < K; ++j) {
      int cj = k * K + j;
      if (K > 1) w.x[a][cj][1] = Rat(1) - Rat(1, K);
      w.x[b][cj][0] = Rat(1, K);
    }
  }
  if (auto bad = check_fractional(inst, w))
    throw std::logic_error("gen_mckc_gap: witness failed validation: " + *bad);
  return out;
}

namespace {

std::vector<std::pair<int, int>> petersen_edges() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) e.emplace_back(i, (i + 1) % 5);         // outer cycle
  for (int i = 0; i < 5; ++i) e.emplace_back(i, i + 5);               // spokes
  for (int i = 0; i < 5; ++i) e.emplace_back(5 + i, 5 + (i + 2) % 5);  // pentagram
  for (auto& [a, b] : e)
    if (a > b) std::swap(a, b);
  std::sort(e.begin(), e.end());
  return e;
}

void enumerate_perfect_matchings(const std::vector<std::pair<int, int>>& edges,
                                 std::vector<std::vector<int>>& out) {
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int covered_mask) {
    if (covered_mask == (1 << 10) - 1) {
      out.push_back(chosen);
      return;
    }
    int v = 0;
    while (covered_mask & (1 << v)) ++v;
    for (int e = 0; e < int(edges.size()); ++e) {
      auto [a, b] = edges[e];
      if (a != v && b != v) continue;
      int other = a == v ? b : a;
      if (covered_mask & (1 << other)) continue;
      chosen.push_back(e);
      rec(covered_mask | (1 << v) | (1 << other));
      chosen.pop_back();
    }
  };
  rec(0);
}

}  // namespace

PetersenGap gen_petersen_pcmin(int k) {
  if (k < 1) throw std::invalid_argument("gen_petersen_pcmin: k >= 1");
  PetersenGap out;
  out.edges = petersen_edges();
  assert(out.edges.size() == 15);

  for (auto [a, b] : out.edges)
    out.instance.job_types.push_back(Rat((std::int64_t(1) << a) + (std::int64_t(1) << b)));
  for (int i = 0; i < 3 * k; ++i)
    out.instance.machines.push_back({Rat(1023), CckpInstance::kUnbounded});

  std::vector<std::vector<int>> matchings;
  enumerate_perfect_matchings(out.edges, matchings);
  if (matchings.size() != 6)
    throw std::logic_error("gen_petersen_pcmin: expected exactly six perfect matchings, got " +
                           std::to_string(matchings.size()));
  std::vector<int> edge_cover(15, 0);
  for (const auto& mt : matchings) {
    std::vector<std::pair<int, int>> as_pairs;
    SupplyVector s;
    s.counts.assign(15, 0);
    for (int e : mt) {
      as_pairs.push_back(out.edges[e]);
      s.counts[e] = 3 * k;
      ++edge_cover[e];
    }
    out.matchings.push_back(std::move(as_pairs));
    out.matching_supplies.push_back(std::move(s));
  }
  for (int e = 0; e < 15; ++e)
    if (edge_cover[e] != 2)
      throw std::logic_error("gen_petersen_pcmin: double-cover property failed");

  out.mixture.counts.assign(15, k);
  // mixture = (1/6) sum of the matching supplies, verified exactly
  for (int e = 0; e < 15; ++e) {
    std::int64_t total = 0;
    for (const auto& s : out.matching_supplies) total += s.counts[e];
    if (total != 6 * k) throw std::logic_error("gen_petersen_pcmin: mixture mismatch");
  }
  return out;
}

bool petersen_mixture_feasible(const PetersenGap& gap) {
  const int m = gap.instance.num_machines();
  if (m != 3) throw OracleGuard("petersen_mixture_feasible: exhaustive check needs k = 1");
  // Total job value is exactly 3 * 1023, so feasibility means a partition
  // of the 15 edge jobs into three sets of value exactly 1023 each.
  std::vector<std::int64_t> vals;
  for (const Rat& c : gap.instance.job_types) vals.push_back(c.num());
  std::vector<std::int64_t> load(3, 0);
  std::function<bool(int)> rec = [&](int e) -> bool {
    if (e == 15) return load[0] == 1023 && load[1] == 1023 && load[2] == 1023;
    bool tried_empty = false;
    for (int i = 0; i < 3; ++i) {
      if (load[i] + vals[e] > 1023) continue;
      if (load[i] == 0) {
        if (tried_empty) continue;  // empty machines are interchangeable
        tried_empty = true;
      }
      load[i] += vals[e];
      if (rec(e + 1)) return true;
      load[i] -= vals[e];
    }
    return false;
  };
  return rec(0);
}

ConfGap gen_conf_gap(int K) {
  if (K < 2 || K > 4) throw std::invalid_argument("gen_conf_gap: K in [2,4] at desk scale");
  ConfGap out;
  CckpInstance& inst = out.instance;

  auto kpow = [&](int e) {  // K^e as exact rational, e may be negative
    Rat r(1);
    for (int q = 0; q < std::abs(e); ++q) r = e >= 0 ? r * Rat(K) : r / Rat(K);
    return r;
  };

  // job types: big (capacity 1, K copies), then type i = 1..K
  inst.job_types.push_back(Rat(1));
  out.supply.counts.push_back(K);
  std::vector<std::int64_t> f(K + 1);
  for (int i = 1; i <= K; ++i) {
    f[i] = kpow(2 * K + 1 - 2 * i).num();  // integer
    inst.job_types.push_back(kpow(i - (2 * K + 1)));
    out.supply.counts.push_back(f[i] + f[i] / K);  // n_i = f_i (1 + 1/K)
  }

  // machines: M_0, then M_1..M_K, then the K classes
  out.m0 = 0;
  inst.machines.push_back({Rat(1), 1});
  for (int i = 1; i <= K; ++i) {
    out.mi.push_back(inst.num_machines());
    inst.machines.push_back({kpow(-i), f[i]});
  }
  out.classes.assign(K + 1, {});
  for (int i = 1; i <= K; ++i)
    for (std::int64_t q = 0; q < f[i]; ++q) {
      out.classes[i].push_back(inst.num_machines());
      inst.machines.push_back({kpow(i - (2 * K + 1)), 1});
    }

  // fractional witness
  out.witness.z.assign(inst.num_machines(), {});
  const Rat one_over_k = Rat(1, K);
  out.witness.z[out.m0].push_back({Config{{0, 1}}, Rat(1)});  // K singleton configs merged
  for (int i = 1; i <= K; ++i) {
    int mi = out.mi[i - 1];
    out.witness.z[mi].push_back({Config{{0, 1}}, Rat(1) - one_over_k});
    out.witness.z[mi].push_back({Config{{i, int(f[i])}}, one_over_k});
    for (int q = 0; q < int(out.classes[i].size()); ++q) {
      int nm = out.classes[i][q];
      out.witness.z[nm].push_back({Config{{i, 1}}, Rat(1)});
    }
  }
  if (auto bad = check_conf_solution(inst, out.supply, out.witness))
    throw std::logic_error("gen_conf_gap: witness failed validation: " + *bad);

  // The two feasible endpoints of the mixture argument:
  //  s1: K+1 big jobs plus f_i type-i jobs; the bigs cover M_0..M_K and the
  //      type-i jobs cover class i.
  //  s2: 1 big job (M_0) plus 2 f_i type-i jobs; M_i takes f_i of its type,
  //      class i takes the other f_i.
  out.s1.counts.assign(K + 1, 0);
  out.s2.counts.assign(K + 1, 0);
  out.s1.counts[0] = K + 1;
  out.s2.counts[0] = 1;
  for (int i = 1; i <= K; ++i) {
    out.s1.counts[i] = f[i];
    out.s2.counts[i] = 2 * f[i];
  }
  out.s1_assignment.per_machine.assign(inst.num_machines(), {});
  out.s2_assignment.per_machine.assign(inst.num_machines(), {});
  out.s1_assignment.per_machine[out.m0] = {0};
  out.s2_assignment.per_machine[out.m0] = {0};
  for (int i = 1; i <= K; ++i) {
    out.s1_assignment.per_machine[out.mi[i - 1]] = {0};
    out.s2_assignment.per_machine[out.mi[i - 1]].assign(f[i], i);
    for (int q = 0; q < int(out.classes[i].size()); ++q) {
      out.s1_assignment.per_machine[out.classes[i][q]] = {i};
      out.s2_assignment.per_machine[out.classes[i][q]] = {i};
    }
  }
  auto check_alloc_meets = [&](const SupplyVector& sv, const Allocation& a) {
    if (auto bad = check_allocation(inst, sv, a))
      throw std::logic_error("gen_conf_gap: endpoint allocation invalid: " + *bad);
    for (int q = 0; q < inst.num_machines(); ++q)
      if (a.received(inst, q) < inst.machines[q].demand)
        throw std::logic_error("gen_conf_gap: endpoint allocation misses a demand");
  };
  check_alloc_meets(out.s1, out.s1_assignment);
  check_alloc_meets(out.s2, out.s2_assignment);
  out.mix.counts.assign(K + 1, 0);
  for (int t = 0; t <= K; ++t) {
    Rat v = Rat(out.s1.counts[t]) / Rat(K) + Rat(out.s2.counts[t]) * (Rat(1) - Rat(1, K));
    if (!v.is_integer()) throw std::logic_error("gen_conf_gap: mixture not integral");
    out.mix.counts[t] = v.num();
  }
  return out;
}

BansalSviridenkoGap gen_bansal_sviridenko(int K) {
  if (K < 2 || K > 4) throw std::invalid_argument("gen_bansal_sviridenko: K in [2,4]");
  BansalSviridenkoGap out;
  CckpInstance& inst = out.instance;
  // job types: 0 = big (capacity K, K-1 copies); 1..K publics (capacity 1);
  // then K*K privates (capacity 1, one per (class, slot))
  inst.job_types.push_back(Rat(K));
  out.supply.counts.push_back(K - 1);
  for (int i = 0; i < K; ++i) {
    inst.job_types.push_back(Rat(1));
    out.supply.counts.push_back(1);
  }
  auto private_type = [&](int cls, int slot) { return 1 + K + cls * K + slot; };
  for (int i = 0; i < K * K; ++i) {
    inst.job_types.push_back(Rat(1));
    out.supply.counts.push_back(1);
  }

  // machines: 0..K-1 large (D = K); then small m^{(i)}_k
  for (int i = 0; i < K; ++i) inst.machines.push_back({Rat(K), CckpInstance::kUnbounded});
  auto small_machine = [&](int cls, int slot) { return K + cls * K + slot; };
  for (int i = 0; i < K * K; ++i) inst.machines.push_back({Rat(1), CckpInstance::kUnbounded});

  out.admissible.assign(inst.num_machines(), std::vector<bool>(inst.num_types(), false));
  for (int i = 0; i < K; ++i) {
    out.admissible[i][0] = true;  // big jobs to large machines
    for (int s = 0; s < K; ++s) out.admissible[i][private_type(i, s)] = true;
  }
  for (int cls = 0; cls < K; ++cls)
    for (int s = 0; s < K; ++s) {
      out.admissible[small_machine(cls, s)][1 + cls] = true;  // class public
      out.admissible[small_machine(cls, s)][private_type(cls, s)] = true;
    }

  out.witness.z.assign(inst.num_machines(), {});
  for (int i = 0; i < K; ++i) {
    out.witness.z[i].push_back({Config{{0, 1}}, Rat(K - 1, K)});
    Config privates;
    for (int s = 0; s < K; ++s) privates.emplace_back(private_type(i, s), 1);
    std::sort(privates.begin(), privates.end());
    out.witness.z[i].push_back({privates, Rat(1, K)});
  }
  for (int cls = 0; cls < K; ++cls)
    for (int s = 0; s < K; ++s) {
      int mm = small_machine(cls, s);
      out.witness.z[mm].push_back({Config{{private_type(cls, s), 1}}, Rat(K - 1, K)});
      out.witness.z[mm].push_back({Config{{1 + cls, 1}}, Rat(1, K)});
    }
  if (auto bad = check_conf_solution(inst, out.supply, out.witness))
    throw std::logic_error("gen_bansal_sviridenko: witness failed validation: " + *bad);
  // admissibility of the witness support
  for (int i = 0; i < inst.num_machines(); ++i)
    for (const auto& [cfg, mass] : out.witness.z[i])
      for (auto [t, nn] : cfg)
        if (!out.admissible[i][t])
          throw std::logic_error("gen_bansal_sviridenko: witness uses inadmissible job");
  return out;
}

Rat restricted_maxmin_ratio(const BansalSviridenkoGap& gap) {
  const CckpInstance& inst = gap.instance;
  const int m = inst.num_machines();
  // expand jobs to copies
  std::vector<int> copies;
  for (int j = 0; j < inst.num_types(); ++j)
    for (std::int64_t c = 0; c < gap.supply.counts[j]; ++c) copies.push_back(j);
  if (copies.size() > 16) throw OracleGuard("restricted_maxmin_ratio: too many jobs");

  std::vector<Rat> received(m, Rat(0));
  Rat best(0);
  bool have(false);
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == copies.size()) {
      Rat r = received[0] / inst.machines[0].demand;
      for (int i = 1; i < m; ++i) r = min(r, received[i] / inst.machines[i].demand);
      if (!have || r > best) {
        best = r;
        have = true;
      }
      return;
    }
    int t = copies[idx];
    bool any = false;
    for (int i = 0; i < m; ++i) {
      if (!gap.admissible[i][t]) continue;
      any = true;
      received[i] += inst.job_types[t];
      rec(idx + 1);
      received[i] -= inst.job_types[t];
    }
    // assigning a job never lowers the minimum, so the unassigned branch
    // only matters when nobody admits the job
    if (!any) rec(idx + 1);
  };
  rec(0);
  return best;
}

MckcInstance gen_qcmin_reduction(const CckpInstance& cckp, const SupplyVector& supply) {
  MckcInstance inst;
  for (int i = 0; i < cckp.num_machines(); ++i) {
    if (!cckp.machines[i].demand.is_integer())
      throw std::invalid_argument("gen_qcmin_reduction: demands must be integers");
    if (cckp.machines[i].cardinality == CckpInstance::kUnbounded)
      throw std::invalid_argument("gen_qcmin_reduction: cardinalities must be finite");
  }
  std::vector<int> group_of;  // per vertex
  for (int i = 0; i < cckp.num_machines(); ++i)
    for (std::int64_t q = 0; q < cckp.machines[i].cardinality; ++q) {
      inst.facility_names.push_back("g" + std::to_string(i) + "_f" + std::to_string(q));
      group_of.push_back(i);
    }
  for (int i = 0; i < cckp.num_machines(); ++i)
    for (std::int64_t q = 0; q < cckp.machines[i].demand.num(); ++q)
      inst.client_names.push_back("g" + std::to_string(i) + "_c" + std::to_string(q));
  for (int i = 0; i < cckp.num_machines(); ++i)
    for (std::int64_t q = 0; q < cckp.machines[i].demand.num(); ++q) group_of.push_back(i);

  const int n = inst.num_vertices();
  inst.distance.assign(n, std::vector<Dist>(n, Dist(Rat(1))));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a == b || group_of[a] == group_of[b]) inst.distance[a][b] = Dist(Rat(0));
  inst.client_weight.assign(inst.num_clients(), Rat(1));

  // capacity profile from the job multiset (ascending, merged)
  std::map<Rat, std::int64_t> prof;
  for (int j = 0; j < cckp.num_types(); ++j)
    if (supply.counts[j] > 0) prof[cckp.job_types[j]] += supply.counts[j];
  for (const auto& [cap, count] : prof) inst.profile.push_back({count, cap});
  inst.soft_capacities = false;
  return inst;
}

}  // namespace mckc
