#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <set>

#include "mckc/flow.hpp"
#include "mckc/maxmin.hpp"

namespace mckc {

namespace {

struct RoundState {
  const CckpInstance& inst;
  const SupplyVector& supply;
  Rat demand_scale;

  std::vector<Rat> deff;       // D_i / demand_scale
  std::vector<Rat> dbar;       // bucket-rounded demand, dbar <= deff < 2 dbar
  std::vector<int> bucket;     // bucket index per machine
  int num_buckets = 0;
  Rat big_m;                   // max(log2 D, #buckets); guarantee denominator 3*big_m
  std::vector<Rat> threshold;  // large-job threshold dbar_i / (3 big_m)

  std::vector<std::map<Config, Rat>> mass;  // z-bar for unrounded machines
  std::vector<std::optional<Config>> rounded;

  explicit RoundState(const CckpInstance& i, const SupplyVector& s, const Rat& scale)
      : inst(i), supply(s), demand_scale(scale) {}

  bool is_large(int i, int type) const { return inst.job_types[type] >= threshold[i]; }

  Rat large_mass(int i) const {
    Rat z(0);
    for (const auto& [cfg, m] : mass[i])
      if (cfg.size() == 1 && cfg[0].second == 1 && is_large(i, cfg[0].first)) z += m;
    return z;
  }

  void settle(int i) {
    if (rounded[i]) return;
    for (const auto& [cfg, m] : mass[i])
      if (m == Rat(1)) {
        rounded[i] = cfg;
        mass[i].clear();
        return;
      }
  }

  void add_mass(int i, const Config& cfg, const Rat& d) {
    auto [it, _] = mass[i].try_emplace(cfg, Rat(0));
    it->second += d;
    if (it->second == Rat(0)) mass[i].erase(it);
  }

  std::vector<std::int64_t> residual_supply() const {
    std::vector<std::int64_t> s(supply.counts);
    for (int i = 0; i < inst.num_machines(); ++i)
      if (rounded[i])
        for (auto [t, n] : *rounded[i]) s[t] -= n;
    return s;
  }
};

Config singleton(int type) { return {{type, 1}}; }

Config config_remove_multiset(Config s, const std::map<int, int>& kill) {
  Config out;
  for (auto [t, n] : s) {
    auto it = kill.find(t);
    int keep = n - (it == kill.end() ? 0 : it->second);
    if (keep > 0) out.emplace_back(t, keep);
  }
  return out;
}

void fix_large_machine(RoundState& st, int i) {
  const int m = st.inst.num_machines();
  for (long pivots = 0;; ++pivots) {
    if (pivots > 2000000) throw std::logic_error("FixLargeMachine: pivot bound exceeded");
    st.settle(i);
    if (st.rounded[i]) return;

    // Fractional large singletons of i, smallest capacity first.
    std::vector<int> ls;
    for (const auto& [cfg, mm] : st.mass[i])
      if (cfg.size() == 1 && cfg[0].second == 1 && st.is_large(i, cfg[0].first) && mm > Rat(0))
        ls.push_back(cfg[0].first);
    std::sort(ls.begin(), ls.end(), [&](int a, int b) {
      if (st.inst.job_types[a] != st.inst.job_types[b])
        return st.inst.job_types[a] < st.inst.job_types[b];
      return a < b;
    });
    if (ls.size() < 2) throw std::logic_error("FixLargeMachine: invariant broken");
    int j1 = ls[0], j2 = ls[1];

    // Another unrounded machine fractionally claiming j1?
    int oi = -1;
    Config os;
    for (int k = 0; k < m && oi < 0; ++k) {
      if (k == i || st.rounded[k]) continue;
      for (const auto& [cfg, mm] : st.mass[k])
        if (mm > Rat(0) && config_count(cfg, j1) > 0) {
          oi = k;
          os = cfg;
          break;
        }
    }
    if (oi < 0) {
      // Nobody else claims j1; supply integrality leaves room to round up.
      st.mass[i].clear();
      st.mass[i][singleton(j1)] = Rat(1);
      st.settle(i);
      return;
    }

    Config t;
    if (st.inst.job_types[j2] > st.threshold[oi]) {
      t = singleton(j2);
    } else {
      t = config_remove_multiset(os, {{j1, 1}});
      // add one copy of j2
      bool put = false;
      for (auto& [tt, nn] : t)
        if (tt == j2) {
          ++nn;
          put = true;
        }
      if (!put) {
        t.emplace_back(j2, 1);
        std::sort(t.begin(), t.end());
      }
    }

    Rat zi_j2 = Rat(0);
    if (auto it = st.mass[i].find(singleton(j2)); it != st.mass[i].end()) zi_j2 = it->second;
    Rat zi_j1 = Rat(0);
    if (auto it = st.mass[i].find(singleton(j1)); it != st.mass[i].end()) zi_j1 = it->second;
    Rat zo_s = st.mass[oi].at(os);
    Rat zo_t = Rat(0);
    if (auto it = st.mass[oi].find(t); it != st.mass[oi].end()) zo_t = it->second;

    Rat delta = min(min(zi_j2, zo_s), min(Rat(1) - zi_j1, Rat(1) - zo_t));
    assert(delta > Rat(0));
    st.add_mass(i, singleton(j2), -delta);
    st.add_mass(oi, os, -delta);
    st.add_mass(i, singleton(j1), delta);
    st.add_mass(oi, t, delta);
    st.settle(oi);
  }
}

void fix_bucket(RoundState& st, int b) {
  const int m = st.inst.num_machines();
  auto hybrids = [&]() {
    std::vector<int> h;
    for (int i = 0; i < m; ++i) {
      if (st.rounded[i] || st.bucket[i] != b) continue;
      Rat zl = st.large_mass(i);
      if (zl > Rat(0) && zl < Rat(1)) h.push_back(i);
    }
    std::sort(h.begin(), h.end(), [&](int a, int c) {
      if (st.inst.machines[a].cardinality != st.inst.machines[c].cardinality)
        return st.inst.machines[a].cardinality < st.inst.machines[c].cardinality;
      return a < c;
    });
    return h;
  };
  for (long pivots = 0;; ++pivots) {
    if (pivots > 2000000) throw std::logic_error("FixBucket: pivot bound exceeded");
    std::vector<int> h = hybrids();
    if (h.size() <= 1) return;
    int i = h[0], oi = h[1];  // smallest cardinality takes the large job

    int jbig = -1;
    for (const auto& [cfg, mm] : st.mass[oi])
      if (cfg.size() == 1 && cfg[0].second == 1 && st.is_large(oi, cfg[0].first) && mm > Rat(0)) {
        jbig = cfg[0].first;
        break;
      }
    Config small_cfg;
    bool found_small = false;
    for (const auto& [cfg, mm] : st.mass[i]) {
      bool has_large = cfg.size() == 1 && cfg[0].second == 1 && st.is_large(i, cfg[0].first);
      if (!has_large && mm > Rat(0)) {
        small_cfg = cfg;
        found_small = true;
        break;
      }
    }
    if (jbig < 0 || !found_small) throw std::logic_error("FixBucket: invariant broken");

    Rat zo_big = st.mass[oi].at(singleton(jbig));
    Rat zi_small = st.mass[i].at(small_cfg);
    Rat zi_big = Rat(0);
    if (auto it = st.mass[i].find(singleton(jbig)); it != st.mass[i].end()) zi_big = it->second;
    Rat zo_small = Rat(0);
    if (auto it = st.mass[oi].find(small_cfg); it != st.mass[oi].end()) zo_small = it->second;

    Rat delta = min(min(zo_big, zi_small), min(Rat(1) - zi_big, Rat(1) - zo_small));
    assert(delta > Rat(0));
    st.add_mass(oi, singleton(jbig), -delta);
    st.add_mass(i, small_cfg, -delta);
    st.add_mass(i, singleton(jbig), delta);
    st.add_mass(oi, small_cfg, delta);
    st.settle(i);
    st.settle(oi);
  }
}

}  // namespace

Rat conf_round_guarantee_factor(const CckpInstance& inst) {
  Rat dmin = inst.machines[0].demand, dmax = dmin;
  for (const auto& mc : inst.machines) {
    dmin = min(dmin, mc.demand);
    dmax = max(dmax, mc.demand);
  }
  double logd = std::log2((dmax / dmin).to_double());
  double lam = std::max(1.0, logd);
  return Rat(6) * Rat::from_double(lam, 1e-12);
}

Allocation conf_lp_round(const CckpInstance& inst, const SupplyVector& supply,
                         const ConfLpSolution& sol, const Rat& demand_scale) {
  if (auto bad = check_conf_solution(inst, supply, sol, demand_scale, Rat(1, 1000000)))
    throw std::invalid_argument("conf_lp_round: " + *bad);
  const int m = inst.num_machines();
  for (const auto& mc : inst.machines)
    if (mc.cardinality == CckpInstance::kUnbounded)
      throw std::invalid_argument("conf_lp_round: cardinality must be finite");

  RoundState st(inst, supply, demand_scale);
  st.deff.resize(m);
  for (int i = 0; i < m; ++i) st.deff[i] = inst.machines[i].demand / demand_scale;
  Rat dmax = st.deff[0];
  Rat dmin = st.deff[0];
  for (const Rat& d : st.deff) {
    dmax = max(dmax, d);
    dmin = min(dmin, d);
  }

  // Buckets anchored at dmax: bucket 0 = [dmax/2, dmax], bucket t =
  // [dmax/2^{t+1}, dmax/2^t) with dbar the bucket floor.  This keeps the
  // bucket count at most ceil(log2 D).
  st.dbar.resize(m);
  st.bucket.resize(m);
  std::set<int> used_buckets;
  for (int i = 0; i < m; ++i) {
    int t = 0;
    Rat floor_val = dmax / Rat(2);
    while (!(st.deff[i] >= floor_val)) {
      floor_val /= Rat(2);
      ++t;
    }
    st.bucket[i] = t;
    st.dbar[i] = floor_val;
    used_buckets.insert(t);
  }
  st.num_buckets = int(used_buckets.size());
  double logd = std::max(1.0, std::log2((dmax / dmin).to_double()));
  st.big_m = max(Rat::from_double(logd, 1e-12), Rat(std::int64_t(st.num_buckets)));
  st.threshold.resize(m);
  for (int i = 0; i < m; ++i) st.threshold[i] = st.dbar[i] / (Rat(3) * st.big_m);

  // Step 1: configurations holding any large job collapse to a large
  // singleton (largest such job, for determinism).
  st.mass.assign(m, {});
  st.rounded.assign(m, std::nullopt);
  for (int i = 0; i < m; ++i) {
    for (const auto& [cfg, mm] : sol.z[i]) {
      if (!(mm > Rat(0))) continue;
      int big = -1;
      for (auto [t, n] : cfg)
        if (st.is_large(i, t) && (big < 0 || inst.job_types[t] > inst.job_types[big])) big = t;
      st.add_mass(i, big >= 0 ? singleton(big) : cfg, mm);
    }
    // Snapped LP rows can be off one part in a million; renormalize so the
    // pivot bookkeeping below is exact.
    Rat row(0);
    for (const auto& [cfg, mm] : st.mass[i]) row += mm;
    if (row != Rat(1)) {
      if (abs(row - Rat(1)) > Rat(1, 100000))
        throw std::invalid_argument("conf_lp_round: (C1) too far off");
      for (auto& [cfg, mm] : st.mass[i]) mm /= row;
    }
    st.settle(i);
  }

  // Step 2: clear out large machines, then keep every bucket at <= 1 hybrid.
  for (long guard = 0;; ++guard) {
    if (guard > 100000) throw std::logic_error("conf_lp_round: step 2 failed to converge");
    int large_machine = -1;
    for (int i = 0; i < m && large_machine < 0; ++i)
      if (!st.rounded[i] && st.large_mass(i) == Rat(1)) large_machine = i;
    if (large_machine >= 0) {
      fix_large_machine(st, large_machine);
      continue;
    }
    int bad_bucket = -1;
    for (int b : used_buckets) {
      int count = 0;
      for (int i = 0; i < m; ++i) {
        if (st.rounded[i] || st.bucket[i] != b) continue;
        Rat zl = st.large_mass(i);
        if (zl > Rat(0) && zl < Rat(1)) ++count;
      }
      if (count > 1) {
        bad_bucket = b;
        break;
      }
    }
    if (bad_bucket < 0) break;
    fix_bucket(st, bad_bucket);
  }

  // Step 3: hybrids with modest large mass drop it; the stubborn ones are
  // matched integrally into the residual supply (Hall holds because their
  // large mass exceeds 1 - 1/K).
  const Rat keep_threshold = Rat(1) - Rat(1) / Rat(std::int64_t(st.num_buckets));
  std::vector<int> pool;
  for (int i = 0; i < m; ++i) {
    if (st.rounded[i]) continue;
    Rat zl = st.large_mass(i);
    if (zl == Rat(0)) continue;
    if (zl > keep_threshold) {
      pool.push_back(i);
    } else {
      for (auto it = st.mass[i].begin(); it != st.mass[i].end();) {
        const Config& cfg = it->first;
        if (cfg.size() == 1 && cfg[0].second == 1 && st.is_large(i, cfg[0].first))
          it = st.mass[i].erase(it);
        else
          ++it;
      }
    }
  }

  std::map<int, int> matched_types;  // J_M as a multiset
  if (!pool.empty()) {
    std::vector<std::int64_t> sres = st.residual_supply();
    const int P = int(pool.size());
    const int J = inst.num_types();
    MaxFlow mf(1 + P + J + 1);
    const int sink = 1 + P + J;
    std::vector<std::vector<std::pair<int, int>>> edges(P);
    for (int p = 0; p < P; ++p) {
      mf.add_edge(0, 1 + p, 1);
      for (const auto& [cfg, mm] : st.mass[pool[p]])
        if (cfg.size() == 1 && cfg[0].second == 1 && st.is_large(pool[p], cfg[0].first) &&
            mm > Rat(0))
          edges[p].emplace_back(cfg[0].first, mf.add_edge(1 + p, 1 + P + cfg[0].first, 1));
    }
    for (int j = 0; j < J; ++j)
      mf.add_edge(1 + P + j, sink, std::max<std::int64_t>(0, sres[j]));
    if (mf.run(0, sink) != P)
      throw std::logic_error("conf_lp_round: hybrid matching fell short of Hall");
    for (int p = 0; p < P; ++p)
      for (auto [t, h] : edges[p])
        if (mf.flow_on(h) == 1) {
          st.rounded[pool[p]] = singleton(t);
          st.mass[pool[p]].clear();
          ++matched_types[t];
        }
  }

  // Remove the matched copies from every remaining small configuration.
  if (!matched_types.empty()) {
    for (int i = 0; i < m; ++i) {
      if (st.rounded[i]) continue;
      std::map<Config, Rat> next;
      for (const auto& [cfg, mm] : st.mass[i]) {
        Config cut = config_remove_multiset(cfg, matched_types);
        auto [it, _] = next.try_emplace(cut, Rat(0));
        it->second += mm;
      }
      st.mass[i] = std::move(next);
    }
  }

  // Step 4: the remaining machines are handled through the assignment LP
  // image of z-bar, rounded Shmoys-Tardos style.
  std::vector<std::int64_t> sres = st.residual_supply();
  CckpInstance small_inst;
  std::vector<int> small_ids;
  for (int i = 0; i < m; ++i)
    if (!st.rounded[i]) {
      small_ids.push_back(i);
      small_inst.machines.push_back(inst.machines[i]);
    }
  small_inst.job_types = inst.job_types;

  Allocation out;
  out.per_machine.assign(m, {});
  if (!small_ids.empty()) {
    SupplyVector ssup;
    ssup.counts.assign(sres.begin(), sres.end());
    for (auto& c : ssup.counts) c = std::max<std::int64_t>(0, c);
    AssignmentPoint z(small_ids.size(), std::vector<Rat>(inst.num_types(), Rat(0)));
    for (std::size_t k = 0; k < small_ids.size(); ++k)
      for (const auto& [cfg, mm] : st.mass[small_ids[k]])
        for (auto [t, n] : cfg) {
          assert(!st.is_large(small_ids[k], t));
          z[k][t] += mm * Rat(n);
        }
    Allocation sub = shmoys_tardos_round(small_inst, ssup, z);
    for (std::size_t k = 0; k < small_ids.size(); ++k)
      out.per_machine[small_ids[k]] = sub.per_machine[k];
  }
  for (int i = 0; i < m; ++i)
    if (st.rounded[i])
      for (auto [t, n] : *st.rounded[i])
        for (int c = 0; c < n; ++c) out.per_machine[i].push_back(t);

  // Hand unused copies to the machines furthest below their target; pure
  // cleanup, the guarantee is proved without it.
  {
    std::vector<std::int64_t> left(supply.counts);
    for (int i = 0; i < m; ++i)
      for (int t : out.per_machine[i]) --left[t];
    std::vector<int> types_desc(inst.num_types());
    for (int t = 0; t < inst.num_types(); ++t) types_desc[t] = t;
    std::sort(types_desc.begin(), types_desc.end(),
              [&](int a, int b) { return inst.job_types[a] > inst.job_types[b]; });
    for (int i = 0; i < m; ++i) {
      Rat target = st.deff[i] / (Rat(6) * st.big_m);
      for (int t : types_desc) {
        while (left[t] > 0 && out.received(inst, i) < target &&
               std::int64_t(out.per_machine[i].size()) < inst.machines[i].cardinality) {
          out.per_machine[i].push_back(t);
          --left[t];
        }
      }
    }
  }

  if (auto bad = check_allocation(inst, supply, out))
    throw std::logic_error("conf_lp_round: " + *bad);
  // The proven floor: dbar_i / (3 big_m).
  for (int i = 0; i < m; ++i)
    if (out.received(inst, i) < st.dbar[i] / (Rat(3) * st.big_m))
      throw std::logic_error("conf_lp_round: output below the proven floor");
  return out;
}

}  // namespace mckc
