#pragma once

#include <optional>
#include <random>

#include "mckc/pipeline.hpp"

namespace mckc::testing {

// Random unit-weight instance over a shortest-path hop metric: facilities
// and clients linked by random unit edges (connected by construction),
// integer capacities.
inline MckcInstance random_instance(std::mt19937_64& rng, int F, int C, int P,
                                    bool soft = false) {
  MckcInstance inst;
  for (int i = 0; i < F; ++i) inst.facility_names.push_back("f" + std::to_string(i));
  for (int j = 0; j < C; ++j) inst.client_names.push_back("c" + std::to_string(j));
  const int n = F + C;
  std::vector<std::vector<int>> hops(n, std::vector<int>(n, 1 << 20));
  for (int a = 0; a < n; ++a) hops[a][a] = 0;
  auto link = [&](int f, int c) { hops[f][F + c] = hops[F + c][f] = 1; };
  // every client gets one random facility, plus extra random edges
  for (int j = 0; j < C; ++j) link(int(rng() % F), j);
  for (int e = 0; e < F + C; ++e) link(int(rng() % F), int(rng() % C));
  // chain facilities through shared clients now and then so components merge
  for (int i = 0; i + 1 < F; ++i)
    if (rng() % 2) link(i, int(rng() % C)), link(i + 1, int(rng() % C));
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        hops[a][b] = std::min(hops[a][b], hops[a][k] + hops[k][b]);
  inst.distance.assign(n, std::vector<Dist>(n, Dist::infinity()));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (hops[a][b] < (1 << 20)) inst.distance[a][b] = Dist(Rat(hops[a][b]));
  inst.client_weight.assign(C, Rat(1));
  // ascending integer capacities with enough total mass most of the time
  std::int64_t caps[3] = {1, 2, 4};
  for (int p = 0; p < P; ++p)
    inst.profile.push_back({1 + std::int64_t(rng() % 4), Rat(caps[p % 3] + 2 * (p / 3))});
  std::sort(inst.profile.begin(), inst.profile.end(),
            [](const CapacityType& a, const CapacityType& b) { return a.cap < b.cap; });
  // merge duplicate capacity values
  std::vector<CapacityType> merged;
  for (const auto& t : inst.profile) {
    if (!merged.empty() && merged.back().cap == t.cap)
      merged.back().count += t.count;
    else
      merged.push_back(t);
  }
  inst.profile = std::move(merged);
  inst.soft_capacities = soft;
  return inst;
}

// Solve (L1)-(L6) at the radius; empty when infeasible.
inline std::optional<FractionalSolution> lp_fractional(const MckcInstance& inst,
                                                       const Rat& radius) {
  MckcLp lpm = build_mckc_lp(inst, radius);
  lp::LpOutcome out = lp::solve(lpm.sys);
  if (out.status != lp::LpStatus::Feasible) return std::nullopt;
  return extract_fractional(inst, lpm, out.point, radius);
}

// A hand-built two-cluster world where overridden thresholds make every
// branch of the partition loop reachable:
//  - f0..f4 co-located over clients c0..c24 (y = 1 each, x spread 1/5)
//  - g serves d0..d3 plus half of e1
//  - h and h2 serve e0 (half/half); h also serves the other half of e1
// With t* = 4 the first ball keeps expanding (the d's and e1 form the t=3
// frontier) and becomes a roundable set; the leftover {e0, e1} ball then
// stalls and augments it through the nearby root.
struct BranchWorld {
  MckcInstance inst;
  FractionalSolution frac;
  StrongParams params;
};

inline BranchWorld build_branch_world() {
  BranchWorld w;
  MckcInstance& inst = w.inst;
  for (int i = 0; i < 5; ++i) inst.facility_names.push_back("f" + std::to_string(i));
  inst.facility_names.push_back("g");
  inst.facility_names.push_back("h");
  inst.facility_names.push_back("h2");
  for (int j = 0; j < 25; ++j) inst.client_names.push_back("c" + std::to_string(j));
  for (int j = 0; j < 4; ++j) inst.client_names.push_back("d" + std::to_string(j));
  inst.client_names.push_back("e0");
  inst.client_names.push_back("e1");
  const int F = 8, n = inst.num_vertices();
  auto cid = [&](int j) { return F + j; };
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 25; ++j) edges.push_back({i, cid(j)});
  for (int j = 25; j < 29; ++j) edges.push_back({5, cid(j)});  // g - d's
  edges.push_back({5, cid(0)});                                // g - c0 joins the clusters
  edges.push_back({6, cid(29)});                               // h - e0
  edges.push_back({7, cid(29)});                               // h2 - e0
  edges.push_back({6, cid(30)});                               // h - e1
  edges.push_back({5, cid(30)});                               // g - e1
  std::vector<std::vector<int>> hops(n, std::vector<int>(n, 1 << 20));
  for (int a = 0; a < n; ++a) hops[a][a] = 0;
  for (auto [a, b] : edges) hops[a][b] = hops[b][a] = 1;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) hops[a][b] = std::min(hops[a][b], hops[a][k] + hops[k][b]);
  inst.distance.assign(n, std::vector<Dist>(n, Dist::infinity()));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (hops[a][b] < (1 << 20)) inst.distance[a][b] = Dist(Rat(hops[a][b]));
  inst.client_weight.assign(inst.num_clients(), Rat(1));
  inst.profile = {{7, Rat(6)}, {1, Rat(9)}};
  if (!validate_instance(inst).empty())
    throw std::logic_error("branch world: invalid instance");

  FractionalSolution& fr = w.frac;
  fr.radius = Rat(1);
  fr.y.assign(F, std::vector<Rat>(2, Rat(0)));
  fr.x.assign(F, std::vector<std::vector<Rat>>(inst.num_clients(), std::vector<Rat>(2, Rat(0))));
  for (int i = 0; i < 5; ++i) fr.y[i][0] = Rat(1);
  fr.y[5][1] = Rat(1);
  fr.y[6][0] = Rat(1, 2);
  fr.y[7][0] = Rat(1, 2);
  for (int j = 0; j < 25; ++j)
    for (int i = 0; i < 5; ++i) fr.x[i][j][0] = Rat(1, 5);
  for (int j = 25; j < 29; ++j) fr.x[5][j][1] = Rat(1);
  fr.x[6][29][0] = Rat(1, 2);  // e0: h + h2
  fr.x[7][29][0] = Rat(1, 2);
  fr.x[6][30][0] = Rat(1, 2);  // e1: h + g
  fr.x[5][30][1] = Rat(1, 2);
  if (check_fractional(inst, fr).has_value())
    throw std::logic_error("branch world: infeasible fractional point");

  w.params.epsilon = Rat(1, 12);
  w.params.t_star = 4;
  w.params.augment_radius = 10;
  w.params.diam_bound = 100;
  return w;
}


}  // namespace mckc::testing
