#include "mckc/instance.hpp"

#include <set>
#include <sstream>

namespace mckc {

std::vector<std::string> validate_instance(const MckcInstance& inst) {
  std::vector<std::string> out;
  const int n = inst.num_vertices();

  if (int(inst.distance.size()) != n) {
    out.push_back("distance: matrix has " + std::to_string(inst.distance.size()) +
                  " rows, expected " + std::to_string(n));
    return out;  // nothing else is checkable
  }
  for (int a = 0; a < n; ++a) {
    if (int(inst.distance[a].size()) != n) {
      out.push_back("distance: row " + std::to_string(a) + " has wrong length");
      return out;
    }
  }

  for (int a = 0; a < n; ++a) {
    if (!(inst.distance[a][a] == Dist(Rat(0))))
      out.push_back("identity: distance(" + std::to_string(a) + "," + std::to_string(a) +
                    ") != 0");
    for (int b = a + 1; b < n; ++b) {
      if (!(inst.distance[a][b] == inst.distance[b][a]))
        out.push_back("symmetry: distance(" + std::to_string(a) + "," + std::to_string(b) +
                      ") != distance(" + std::to_string(b) + "," + std::to_string(a) + ")");
      if (!inst.distance[a][b].is_infinite() && inst.distance[a][b].value() < Rat(0))
        out.push_back("nonnegativity: distance(" + std::to_string(a) + "," +
                      std::to_string(b) + ") < 0");
    }
  }

  // Triangle inequality over all finite triples.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (b == a || inst.distance[a][b].is_infinite()) continue;
      for (int c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (inst.distance[a][c].is_infinite() || inst.distance[c][b].is_infinite()) continue;
        if (inst.distance[a][c].value() + inst.distance[c][b].value() <
            inst.distance[a][b].value()) {
          out.push_back("triangle: d(" + std::to_string(a) + "," + std::to_string(b) +
                        ") > d(" + std::to_string(a) + "," + std::to_string(c) + ") + d(" +
                        std::to_string(c) + "," + std::to_string(b) + ")");
        }
      }
    }

  if (int(inst.client_weight.size()) != inst.num_clients())
    out.push_back("weights: length mismatch with clients");
  else
    for (int j = 0; j < inst.num_clients(); ++j)
      if (!(inst.client_weight[j] > Rat(0)))
        out.push_back("weights: d_" + std::to_string(j) + " not positive");

  if (inst.profile.empty()) out.push_back("profile: empty capacity profile");
  std::int64_t total = 0;
  for (std::size_t p = 0; p < inst.profile.size(); ++p) {
    if (inst.profile[p].count < 0)
      out.push_back("profile: negative count at type " + std::to_string(p));
    total += std::max<std::int64_t>(inst.profile[p].count, 0);
    if (!(inst.profile[p].cap > Rat(0)))
      out.push_back("profile: capacity at type " + std::to_string(p) + " not positive");
    if (p > 0 && !(inst.profile[p - 1].cap < inst.profile[p].cap))
      out.push_back("profile: capacities not strictly increasing at type " + std::to_string(p));
  }
  if (!inst.profile.empty() && total < 1) out.push_back("profile: no capacity copies at all");

  // Duplicate ids would make I/O ambiguous.
  std::set<std::string> seen;
  for (const auto& v : {inst.facility_names, inst.client_names})
    for (const auto& s : v)
      if (!seen.insert(s).second) out.push_back("ids: duplicate id '" + s + "'");

  return out;
}

void check_solution_shape(const MckcInstance& inst, const McKcSolution& sol) {
  std::vector<std::int64_t> used(inst.num_types(), 0);
  std::set<int> occupied;
  for (const auto& [i, p] : sol.placements) {
    if (i < 0 || i >= inst.num_facilities()) throw std::invalid_argument("placement: bad facility index");
    if (p < 0 || p >= inst.num_types()) throw std::invalid_argument("placement: bad type index");
    ++used[p];
    if (!inst.soft_capacities && !occupied.insert(i).second)
      throw std::invalid_argument("placement: two capacities at one location under hard capacities");
  }
  for (int p = 0; p < inst.num_types(); ++p)
    if (used[p] > inst.profile[p].count)
      throw std::invalid_argument("placement: type " + std::to_string(p) + " over count k_p");
  if (int(sol.assignment.size()) != inst.num_clients())
    throw std::invalid_argument("assignment: length mismatch with clients");
  for (int j = 0; j < inst.num_clients(); ++j) {
    int slot = sol.assignment[j];
    if (slot < 0 || slot >= int(sol.placements.size()))
      throw std::invalid_argument("assignment: client " + std::to_string(j) +
                                  " assigned to unplaced target");
  }
}

QualityReport evaluate_solution(const MckcInstance& inst, const McKcSolution& sol,
                                const Rat& reference_radius) {
  check_solution_shape(inst, sol);
  QualityReport rep;
  rep.max_assignment_distance = Dist(Rat(0));
  for (int j = 0; j < inst.num_clients(); ++j) {
    int slot = sol.assignment[j];
    const Dist& d = inst.dist_fc(sol.placements[slot].first, j);
    if (rep.max_assignment_distance < d) rep.max_assignment_distance = d;
    auto [it, _] = rep.per_facility_load.try_emplace(slot, Rat(0));
    it->second += inst.client_weight[j];
  }
  rep.capacity_factor = Rat(0);
  for (const auto& [slot, load] : rep.per_facility_load) {
    Rat ratio = load / inst.profile[sol.placements[slot].second].cap;
    rep.capacity_factor = max(rep.capacity_factor, ratio);
  }
  if (rep.max_assignment_distance.is_infinite())
    rep.distance_factor = Dist::infinity();
  else if (reference_radius == Rat(0))
    rep.distance_factor = rep.max_assignment_distance.value() == Rat(0)
                              ? Dist(Rat(0))
                              : Dist::infinity();
  else
    rep.distance_factor = Dist(rep.max_assignment_distance.value() / reference_radius);
  rep.feasible_counts = true;  // check_solution_shape threw otherwise
  return rep;
}

}  // namespace mckc
