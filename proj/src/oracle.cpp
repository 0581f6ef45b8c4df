#include "mckc/oracle.hpp"

#include <algorithm>
#include <functional>

#include "mckc/flow.hpp"

namespace mckc {

namespace {

// Placement enumeration shared by the two MCKC oracles.  Capacities are
// placed copy by copy (largest type first); copies of one type follow
// non-decreasing facility indices to kill permutation symmetry, and once a
// copy of a type is left unplaced the rest of that type is too.
struct PlacementEnum {
  const MckcInstance& inst;
  std::vector<std::pair<int, int>> current;  // (facility, type)
  std::vector<bool> occupied;
  std::function<void(const std::vector<std::pair<int, int>>&)> visit;

  explicit PlacementEnum(const MckcInstance& i) : inst(i), occupied(i.num_facilities(), false) {}

  void go(int type, int copies_left, int min_facility) {
    if (type < 0) {
      visit(current);
      return;
    }
    if (copies_left == 0) {
      go(type - 1, type > 0 ? int(inst.profile[type - 1].count) : 0, 0);
      return;
    }
    // Stop placing this type here.
    go(type - 1, type > 0 ? int(inst.profile[type - 1].count) : 0, 0);
    for (int i = min_facility; i < inst.num_facilities(); ++i) {
      if (!inst.soft_capacities && occupied[i]) continue;
      occupied[i] = true;
      current.emplace_back(i, type);
      go(type, copies_left - 1, inst.soft_capacities ? i : i + 1);
      current.pop_back();
      occupied[i] = false;
    }
  }

  void run() {
    int top = inst.num_types() - 1;
    go(top, int(inst.profile[top].count), 0);
  }
};

void check_guards(const MckcInstance& inst) {
  if (inst.num_facilities() > 10)
    throw OracleGuard("brute_force_mckc: |F| > 10");
  if (inst.total_capacity_count() > 10)
    throw OracleGuard("brute_force_mckc: more than 10 capacity copies");
  for (const Rat& w : inst.client_weight)
    if (!(w == Rat(1)))
      throw std::invalid_argument(
          "brute_force_mckc: client weights must be 1 (unit-demand matching)");
}

// Integral assignment of all clients to the placed slots with per-slot cap
// `cap[slot]` and an edge iff d <= radius.  Returns the assignment or
// nullopt.  Unit clients, so flow integrality gives a true assignment.
std::optional<std::vector<int>> match_clients(const MckcInstance& inst,
                                              const std::vector<std::pair<int, int>>& placements,
                                              const std::vector<std::int64_t>& cap,
                                              const Rat& radius) {
  const int S = int(placements.size());
  const int C = inst.num_clients();
  // nodes: 0 = source, 1..C clients, C+1..C+S slots, C+S+1 sink
  MaxFlow mf(C + S + 2);
  const int sink = C + S + 1;
  std::vector<int> client_edges(C);
  std::vector<std::vector<std::pair<int, int>>> slot_edges(C);  // (slot, handle)
  for (int j = 0; j < C; ++j) client_edges[j] = mf.add_edge(0, 1 + j, 1);
  for (int j = 0; j < C; ++j)
    for (int s = 0; s < S; ++s) {
      const Dist& d = inst.dist_fc(placements[s].first, j);
      if (!d.is_infinite() && d.value() <= radius)
        slot_edges[j].emplace_back(s, mf.add_edge(1 + j, C + 1 + s, 1));
    }
  for (int s = 0; s < S; ++s) mf.add_edge(C + 1 + s, sink, cap[s]);
  if (mf.run(0, sink) != C) return std::nullopt;
  std::vector<int> assign(C, -1);
  for (int j = 0; j < C; ++j)
    for (auto [s, h] : slot_edges[j])
      if (mf.flow_on(h) == 1) assign[j] = s;
  return assign;
}

}  // namespace

std::optional<McKcSolution> brute_force_mckc(const MckcInstance& inst, const Rat& radius,
                                             const Rat& b) {
  check_guards(inst);
  std::optional<McKcSolution> found;
  PlacementEnum en(inst);
  en.visit = [&](const std::vector<std::pair<int, int>>& placements) {
    if (found) return;
    std::vector<std::int64_t> cap(placements.size());
    for (std::size_t s = 0; s < placements.size(); ++s)
      cap[s] = (b * inst.profile[placements[s].second].cap).ceil();
    auto assign = match_clients(inst, placements, cap, radius);
    if (assign) {
      McKcSolution sol;
      sol.placements = placements;
      sol.assignment = *assign;
      sol.radius_guess = radius;
      found = sol;
    }
  };
  en.run();
  return found;
}

std::optional<Rat> brute_force_mckc_min_ratio(const MckcInstance& inst, const Rat& radius) {
  check_guards(inst);
  // Candidate ratios are load/c_p for integer loads; the minimum over
  // placements is attained at one of them.
  std::vector<Rat> candidates;
  for (int load = 1; load <= inst.num_clients(); ++load)
    for (const auto& t : inst.profile) candidates.push_back(Rat(load) / t.cap);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::optional<Rat> best;
  PlacementEnum en(inst);
  en.visit = [&](const std::vector<std::pair<int, int>>& placements) {
    if (placements.empty()) return;
    // Binary search the smallest feasible ratio for this placement.
    int lo = 0, hi = int(candidates.size());  // [lo, hi) unknown..; hi = infeasible bound
    if (best) {
      // Only ratios strictly better than the incumbent matter.
      hi = int(std::lower_bound(candidates.begin(), candidates.end(), *best) -
               candidates.begin());
    }
    auto feasible_at = [&](const Rat& r) {
      std::vector<std::int64_t> cap(placements.size());
      for (std::size_t s = 0; s < placements.size(); ++s)
        cap[s] = (r * inst.profile[placements[s].second].cap).floor();
      return match_clients(inst, placements, cap, radius).has_value();
    };
    int first_ok = hi;
    while (lo < first_ok) {
      int mid = (lo + first_ok) / 2;
      if (feasible_at(candidates[mid]))
        first_ok = mid;
      else
        lo = mid + 1;
    }
    if (first_ok < hi) best = candidates[first_ok];
  };
  en.run();
  return best;
}

CckpBruteResult brute_force_cckp(const CckpInstance& inst, const SupplyVector& supply) {
  if (inst.num_machines() > 5) throw OracleGuard("brute_force_cckp: m > 5");
  if (int(supply.counts.size()) != inst.num_types())
    throw std::invalid_argument("brute_force_cckp: supply length mismatch");
  if (supply.total() > 12) throw OracleGuard("brute_force_cckp: more than 12 job copies");
  const int m = inst.num_machines();

  CckpBruteResult best;
  best.ratio = Rat(0);
  best.assignment.assign(m, {});
  if (m == 0) {
    best.ratio = Rat(1);  // vacuously satisfied
    return best;
  }

  std::vector<Rat> received(m, Rat(0));
  std::vector<std::int64_t> count(m, 0);
  std::vector<std::vector<int>> picked(m);
  bool have_leaf = false;

  // Distribute the copies of each type over machines (plus "discard").
  std::function<void(int)> rec_type = [&](int type) {
    // Optimistic bound: even giving every machine all still-undecided
    // capacity cannot beat the incumbent.
    if (have_leaf) {
      Rat remaining(0);
      for (int t = type; t < inst.num_types(); ++t)
        remaining += Rat(supply.counts[t]) * inst.job_types[t];
      Rat ub = (received[0] + remaining) / inst.machines[0].demand;
      for (int i = 1; i < m; ++i)
        ub = min(ub, (received[i] + remaining) / inst.machines[i].demand);
      if (!(ub > best.ratio)) return;
    }
    if (type == inst.num_types()) {
      Rat r = received[0] / inst.machines[0].demand;
      for (int i = 1; i < m; ++i) r = min(r, received[i] / inst.machines[i].demand);
      if (!have_leaf || r > best.ratio) {
        best.ratio = r;
        best.assignment = picked;
        have_leaf = true;
      }
      return;
    }
    const Rat c = inst.job_types[type];
    // counts per machine for this type, machine index non-decreasing
    std::function<void(int, std::int64_t)> put = [&](int machine, std::int64_t left) {
      if (machine == m) {
        rec_type(type + 1);  // leftovers discarded
        return;
      }
      std::int64_t room =
          inst.machines[machine].cardinality == CckpInstance::kUnbounded
              ? left
              : std::min<std::int64_t>(left, inst.machines[machine].cardinality - count[machine]);
      for (std::int64_t take = 0; take <= room; ++take) {
        if (take > 0) {
          received[machine] += c;
          ++count[machine];
          picked[machine].push_back(type);
        }
        put(machine + 1, left - take);
      }
      for (std::int64_t take = room; take > 0; --take) {
        received[machine] -= c;
        --count[machine];
        picked[machine].pop_back();
      }
    };
    put(0, supply.counts[type]);
  };
  rec_type(0);
  return best;
}

}  // namespace mckc
