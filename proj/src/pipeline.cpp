#include "mckc/pipeline.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "mckc/flow.hpp"
#include "mckc/oracle.hpp"

namespace mckc {

namespace {

void trace(const PipelineConfig& cfg, const std::string& event, const std::string& fields) {
  if (!cfg.trace) return;
  (*cfg.trace) << "{\"event\":\"" << event << "\"" << (fields.empty() ? "" : ",") << fields
               << "}\n";
}

struct Slot {
  int facility;
  int type;  // real profile type installed
};

// Exact min-max-ratio assignment of n unit clients onto slots everyone can
// reach: each client goes to the slot minimizing (load+1)/cap, which
// achieves the water-filling optimum.
void greedy_fill(const MckcInstance& inst, const std::vector<int>& slot_ids,
                 const std::vector<Slot>& slots, std::vector<Rat>& load,
                 const std::vector<int>& clients, std::vector<int>& assignment) {
  for (int j : clients) {
    int best = -1;
    Rat best_ratio(0);
    for (int s : slot_ids) {
      Rat r = (load[s] + Rat(1)) / inst.profile[slots[s].type].cap;
      if (best < 0 || r < best_ratio) {
        best = s;
        best_ratio = r;
      }
    }
    if (best < 0) throw std::logic_error("greedy_fill: no slot available");
    assignment[j] = best;
    load[best] += Rat(1);
  }
}

// Min-max-ratio flow assignment over explicit edges: scan the candidate
// ratio grid, take the first cap vector admitting a full matching.
std::optional<std::vector<int>> flow_fill(const MckcInstance& inst,
                                          const std::vector<Slot>& slots,
                                          const std::vector<int>& clients,
                                          const std::vector<std::vector<int>>& edges,
                                          std::vector<Rat>& load,
                                          std::vector<int>& assignment) {
  if (clients.empty()) return std::vector<int>{};
  std::vector<Rat> candidates;
  for (std::size_t s = 0; s < slots.size(); ++s)
    for (int L = 1; L <= int(clients.size()); ++L)
      candidates.push_back(Rat(L) / inst.profile[slots[s].type].cap);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto attempt = [&](const Rat& r) -> std::optional<std::vector<int>> {
    MaxFlow mf(1 + int(clients.size()) + int(slots.size()) + 1);
    int sink = 1 + int(clients.size()) + int(slots.size());
    std::vector<std::vector<std::pair<int, int>>> handles(clients.size());
    for (std::size_t c = 0; c < clients.size(); ++c) {
      mf.add_edge(0, 1 + int(c), 1);
      for (int s : edges[c])
        handles[c].emplace_back(s, mf.add_edge(1 + int(c), 1 + int(clients.size()) + s, 1));
    }
    for (std::size_t s = 0; s < slots.size(); ++s) {
      Rat cap = r * inst.profile[slots[s].type].cap - load[s];
      std::int64_t ci = std::max<std::int64_t>(cap.floor(), 0);
      mf.add_edge(1 + int(clients.size()) + int(s), sink, ci);
    }
    if (mf.run(0, sink) != std::int64_t(clients.size())) return std::nullopt;
    std::vector<int> got(clients.size(), -1);
    for (std::size_t c = 0; c < clients.size(); ++c)
      for (auto [s, h] : handles[c])
        if (mf.flow_on(h) == 1) got[c] = s;
    return got;
  };

  // binary search the grid for the smallest feasible ratio
  int lo = 0, hi = int(candidates.size()) - 1, first = -1;
  while (lo <= hi) {
    int mid = (lo + hi) / 2;
    if (attempt(candidates[mid])) {
      first = mid;
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  if (first < 0) return std::nullopt;
  auto got = *attempt(candidates[first]);
  for (std::size_t c = 0; c < clients.size(); ++c) {
    assignment[clients[c]] = got[c];
    load[got[c]] += Rat(1);
  }
  return got;
}

PipelineResult fail(FailureKind kind, std::string detail) {
  PipelineResult r;
  r.failure = kind;
  r.detail = std::move(detail);
  return r;
}

struct BackendOutcome {
  std::optional<Allocation> allocation;
  std::string detail;  // certificate description on failure
};

// Solve the CCKP/Q||C_min hand-off with the configured backend.  nullopt
// allocation means certified infeasibility of the hand-off.
BackendOutcome run_backend(const CckpInstance& cckp, const SupplyVector& supply,
                           const PipelineConfig& cfg) {
  BackendOutcome out;
  switch (cfg.backend) {
    case CckpBackend::Greedy: {
      GreedyOutcome g = greedy_qcmin(cckp, supply);
      if (g.allocation)
        out.allocation = std::move(g.allocation);
      else
        out.detail = "greedy Farkas certificate";
      return out;
    }
    case CckpBackend::Brute: {
      CckpBruteResult b = brute_force_cckp(cckp, supply);
      if (b.ratio >= Rat(1))
        out.allocation = Allocation{b.assignment};
      else
        out.detail = "exhaustive max-min ratio " + b.ratio.str() + " < 1";
      return out;
    }
    case CckpBackend::Qptas: {
      auto a = qptas_cckp(cckp, supply, 0.2);
      if (a)
        out.allocation = std::move(a);
      else
        out.detail = "qptas: no enumerated guess admits a residual solution";
      return out;
    }
    case CckpBackend::ConfRound: {
      double eps = cfg.separation_eps > 0 ? cfg.separation_eps : cfg.delta.to_double();
      std::vector<Rat> pt;
      for (auto c : supply.counts) pt.push_back(Rat(c));
      PConfResult sep = p_conf_separation(cckp, pt, eps);
      if (!sep.accepted) {
        out.detail = "supply separated from the configuration polyhedron";
        return out;
      }
      out.allocation =
          conf_lp_round(cckp, supply, sep.z, Rat(1) + Rat::from_double(eps));
      return out;
    }
  }
  throw std::logic_error("unreachable backend");
}

}  // namespace

MckcLp build_mckc_lp(const MckcInstance& inst, const Rat& radius) {
  MckcLp out;
  const int F = inst.num_facilities(), C = inst.num_clients(), P = inst.num_types();
  out.yvar.assign(F, std::vector<int>(P));
  out.xvar.assign(F, std::vector<std::vector<int>>(C, std::vector<int>(P, -1)));
  for (int i = 0; i < F; ++i)
    for (int p = 0; p < P; ++p)
      out.yvar[i][p] =
          out.sys.add_variable("y_" + std::to_string(i) + "_" + std::to_string(p));
  for (int i = 0; i < F; ++i)
    for (int j = 0; j < C; ++j) {
      const Dist& d = inst.dist_fc(i, j);
      if (d.is_infinite() || d.value() > radius) continue;  // x forced to 0 off-radius
      for (int p = 0; p < P; ++p)
        out.xvar[i][j][p] = out.sys.add_variable("x_" + std::to_string(i) + "_" +
                                                 std::to_string(j) + "_" + std::to_string(p));
    }
  for (int j = 0; j < C; ++j) {  // (L1)
    lp::Constraint c;
    c.rel = lp::Rel::Ge;
    c.rhs = 1.0;
    c.name = "L1_" + std::to_string(j);
    for (int i = 0; i < F; ++i)
      for (int p = 0; p < P; ++p)
        if (out.xvar[i][j][p] >= 0) c.coeffs.push_back({out.xvar[i][j][p], 1.0});
    out.sys.add_constraint(std::move(c));
  }
  for (int i = 0; i < F; ++i)  // (L2)
    for (int p = 0; p < P; ++p) {
      lp::Constraint c;
      c.rel = lp::Rel::Le;
      c.rhs = 0.0;
      c.name = "L2_" + std::to_string(i) + "_" + std::to_string(p);
      for (int j = 0; j < C; ++j)
        if (out.xvar[i][j][p] >= 0)
          c.coeffs.push_back({out.xvar[i][j][p], inst.client_weight[j].to_double()});
      c.coeffs.push_back({out.yvar[i][p], -inst.profile[p].cap.to_double()});
      out.sys.add_constraint(std::move(c));
    }
  for (int p = 0; p < P; ++p) {  // (L3)
    lp::Constraint c;
    c.rel = lp::Rel::Le;
    c.rhs = double(inst.profile[p].count);
    c.name = "L3_" + std::to_string(p);
    for (int i = 0; i < F; ++i) c.coeffs.push_back({out.yvar[i][p], 1.0});
    out.sys.add_constraint(std::move(c));
  }
  for (int i = 0; i < F; ++i)  // (L4)
    for (int j = 0; j < C; ++j)
      for (int p = 0; p < P; ++p) {
        if (out.xvar[i][j][p] < 0) continue;
        lp::Constraint c;
        c.rel = lp::Rel::Le;
        c.rhs = 0.0;
        c.coeffs = {{out.xvar[i][j][p], 1.0}, {out.yvar[i][p], -1.0}};
        out.sys.add_constraint(std::move(c));
      }
  if (!inst.soft_capacities)
    for (int i = 0; i < F; ++i) {  // (L5)
      lp::Constraint c;
      c.rel = lp::Rel::Le;
      c.rhs = 1.0;
      c.name = "L5_" + std::to_string(i);
      for (int p = 0; p < P; ++p) c.coeffs.push_back({out.yvar[i][p], 1.0});
      out.sys.add_constraint(std::move(c));
    }
  return out;
}

FractionalSolution extract_fractional(const MckcInstance& inst, const MckcLp& lp,
                                      const std::vector<double>& point, const Rat& radius) {
  const int F = inst.num_facilities(), C = inst.num_clients(), P = inst.num_types();
  std::vector<std::vector<double>> y(F, std::vector<double>(P, 0.0));
  std::vector<std::vector<std::vector<double>>> x(
      F, std::vector<std::vector<double>>(C, std::vector<double>(P, 0.0)));
  for (int i = 0; i < F; ++i)
    for (int p = 0; p < P; ++p) y[i][p] = std::max(0.0, point[lp.yvar[i][p]]);
  for (int i = 0; i < F; ++i)
    for (int j = 0; j < C; ++j)
      for (int p = 0; p < P; ++p)
        if (lp.xvar[i][j][p] >= 0) x[i][j][p] = std::max(0.0, point[lp.xvar[i][j][p]]);
  return FractionalSolution::from_doubles(inst, y, x, radius);
}

std::optional<std::vector<int>> assign_clients_matching(
    const ThresholdGraph& g, const std::vector<std::pair<int, int>>& placements, int a_hops,
    const Rat& b) {
  const MckcInstance& inst = g.instance();
  for (const Rat& w : inst.client_weight)
    if (!(w == Rat(1)))
      throw std::invalid_argument("assign_clients_matching: unit client weights required");
  const int C = inst.num_clients();
  const int S = int(placements.size());
  MaxFlow mf(1 + C + S + 1);
  const int sink = 1 + C + S;
  std::vector<std::vector<std::pair<int, int>>> handles(C);
  // hop distances from each slot facility
  std::vector<std::vector<int>> hop(S);
  for (int s = 0; s < S; ++s) hop[s] = g.hop_distances_g(placements[s].first);
  for (int j = 0; j < C; ++j) {
    mf.add_edge(0, 1 + j, 1);
    int v = inst.client_vertex(j);
    for (int s = 0; s < S; ++s)
      if (hop[s][v] >= 0 && hop[s][v] <= a_hops)
        handles[j].emplace_back(s, mf.add_edge(1 + j, 1 + C + s, 1));
  }
  for (int s = 0; s < S; ++s) {
    Rat cap = b * inst.profile[placements[s].second].cap;
    mf.add_edge(1 + C + s, sink, std::max<std::int64_t>(0, cap.ceil()));
  }
  if (mf.run(0, sink) != C) return std::nullopt;
  std::vector<int> assign(C, -1);
  for (int j = 0; j < C; ++j)
    for (auto [s, h] : handles[j])
      if (mf.flow_on(h) == 1) assign[j] = s;
  return assign;
}

namespace {

// Shared tail: install allocations on neighborhood parts, assign clients,
// extend to the deleted, and measure.
struct Assembler {
  const MckcInstance& inst;
  const ThresholdGraph& g;
  const PipelineConfig& cfg;
  std::vector<Slot> slots;
  std::vector<Rat> load;
  std::vector<int> assignment;  // client -> slot
  int hop_budget = 0;

  explicit Assembler(const MckcInstance& i, const ThresholdGraph& gr, const PipelineConfig& c)
      : inst(i), g(gr), cfg(c) {
    assignment.assign(inst.num_clients(), -1);
  }

  // install one part's jobs; returns slot ids
  std::vector<int> install_part(const std::vector<int>& part_facilities,
                                const std::vector<int>& jobs) {
    std::vector<int> ids;
    std::vector<int> locs = part_facilities;
    std::sort(locs.begin(), locs.end());
    std::vector<int> sorted_jobs = jobs;
    std::sort(sorted_jobs.begin(), sorted_jobs.end(), [&](int a, int b) {
      return inst.profile[a].cap > inst.profile[b].cap;  // largest first
    });
    for (std::size_t q = 0; q < sorted_jobs.size(); ++q) {
      int facility;
      if (q < locs.size())
        facility = locs[q];
      else if (inst.soft_capacities)
        facility = locs[0];  // co-locate overflow
      else
        throw std::logic_error("install_part: more jobs than locations under hard capacities");
      slots.push_back({facility, sorted_jobs[q]});
      load.push_back(Rat(0));
      ids.push_back(int(slots.size()) - 1);
    }
    return ids;
  }

  McKcSolution finish(const Rat& radius) {
    McKcSolution sol;
    for (const Slot& s : slots) sol.placements.emplace_back(s.facility, s.type);
    sol.assignment = assignment;
    sol.radius_guess = radius;
    return sol;
  }
};

PipelineResult assemble_weak(const MckcInstance& inst, const ThresholdGraph& g,
                             const WeakDecomposition& dec, const Allocation& alloc,
                             const Rat& radius, const PipelineConfig& cfg) {
  Assembler as(inst, g, cfg);
  // deleted clients ride with their heaviest-weight target (lowest id tie)
  std::map<int, std::vector<int>> extra;  // part index <- deleted clients
  std::map<int, int> part_of_client;
  for (std::size_t l = 0; l < dec.parts.size(); ++l)
    for (int v : dec.parts[l].clients) part_of_client[v] = int(l);
  for (int v : dec.deleted) {
    const ChargeEntry* best = nullptr;
    for (const auto& e : dec.charge)
      if (e.deleted == v && (!best || e.weight > best->weight ||
                             (e.weight == best->weight && e.target < best->target)))
        best = &e;
    if (!best) throw std::logic_error("weak pipeline: deleted client without charge row");
    extra[part_of_client.at(best->target)].push_back(v);
  }

  for (std::size_t l = 0; l < dec.parts.size(); ++l) {
    std::vector<int> ids = as.install_part(dec.parts[l].facilities, alloc.per_machine[l]);
    std::vector<int> clients;
    for (int v : dec.parts[l].clients) clients.push_back(v - inst.num_facilities());
    if (auto it = extra.find(int(l)); it != extra.end())
      for (int v : it->second) clients.push_back(v - inst.num_facilities());
    if (!clients.empty() && ids.empty())
      return fail(FailureKind::MatchingFailed,
                  "part " + std::to_string(l) + " received no capacity");
    greedy_fill(inst, ids, as.slots, as.load, clients, as.assignment);
  }
  as.hop_budget = 2 * dec.max_grow_t + std::max(dec.charge_hop_support, 0);

  PipelineResult res;
  res.solution = as.finish(radius);
  res.hop_budget = as.hop_budget;
  return res;
}

int measured_hops(const MckcInstance& inst, const ThresholdGraph& g, const McKcSolution& sol) {
  int worst = 0;
  std::map<int, std::vector<int>> cache;
  for (int j = 0; j < inst.num_clients(); ++j) {
    int f = sol.placements[sol.assignment[j]].first;
    auto [it, fresh] = cache.try_emplace(f);
    if (fresh) it->second = g.hop_distances_g(f);
    int h = it->second[inst.client_vertex(j)];
    if (h < 0) return -1;  // disconnected assignment: should not happen
    worst = std::max(worst, h);
  }
  return worst;
}

}  // namespace

PipelineResult solve_at_radius(const MckcInstance& raw_inst, const Rat& radius,
                               const PipelineConfig& config) {
  for (const Rat& w : raw_inst.client_weight)
    if (!(w == Rat(1)))
      return fail(FailureKind::Guard,
                  "end-to-end solving needs unit client weights (integral assignment)");
  // mode/backend compatibility; the soft routes solve the soft relaxation
  // of a hard instance
  if (config.mode == PipelineMode::StrongHard && raw_inst.soft_capacities)
    return fail(FailureKind::Guard, "strong-hard mode needs hard capacities");
  if (config.mode == PipelineMode::Weak && raw_inst.soft_capacities &&
      config.backend == CckpBackend::ConfRound)
    return fail(FailureKind::Guard, "configuration backend needs cardinalities (hard mode)");
  MckcInstance softened;
  const MckcInstance& inst = [&]() -> const MckcInstance& {
    bool soft_route = config.mode == PipelineMode::StrongSoft ||
                      (config.mode == PipelineMode::Weak && config.backend == CckpBackend::Greedy);
    if (soft_route && !raw_inst.soft_capacities) {
      softened = raw_inst;
      softened.soft_capacities = true;
      return softened;
    }
    return raw_inst;
  }();
  ThresholdGraph g(inst, radius);
  for (int j = 0; j < inst.num_clients(); ++j)
    if (g.neighbors_g(inst.client_vertex(j)).empty())
      return fail(FailureKind::LpInfeasible,
                  "client " + std::to_string(j) + " has no facility within the radius");
  trace(config, "radius_guess", "\"radius\":\"" + radius.str() + "\"");

  if (config.mode == PipelineMode::Weak) {
    WeakDecomposition dec;
    try {
      dec = weak_decompose(g, config.delta);
    } catch (const RadiusInfeasible& e) {
      return fail(FailureKind::LpInfeasible, e.what());
    }
    trace(config, "weak_decomposition",
          "\"parts\":" + std::to_string(dec.parts.size()) +
              ",\"deleted\":" + std::to_string(dec.deleted.size()));
    auto [cckp, supply] = weak_to_cckp(dec, inst, Rat(1), /*with_cardinality=*/
                                       !inst.soft_capacities);
    BackendOutcome b;
    try {
      b = run_backend(cckp, supply, config);
    } catch (const OracleGuard& e) {
      return fail(FailureKind::Guard, e.what());
    } catch (const RoundLimit& e) {
      return fail(FailureKind::CutLimit, e.what());
    }
    if (!b.allocation) return fail(FailureKind::CutProvedInfeasible, b.detail);
    PipelineResult res = assemble_weak(inst, g, dec, *b.allocation, radius, config);
    if (!res.ok()) return res;
    res.quality = evaluate_solution(inst, *res.solution, radius);
    res.solution_max_hops = measured_hops(inst, g, *res.solution);
    if (res.solution_max_hops < 0 || res.solution_max_hops > res.hop_budget)
      return fail(FailureKind::MatchingFailed, "assignment exceeded the hop budget");
    trace(config, "solution",
          "\"b\":\"" + res.quality.capacity_factor.str() +
              "\",\"hops\":" + std::to_string(res.solution_max_hops));
    return res;
  }

  // Strong modes: LP first.
  MckcLp lpmodel = build_mckc_lp(inst, radius);
  StrongParams params =
      config.params_override ? *config.params_override : StrongParams::from_delta(config.delta);

  struct Captured {
    StrongDecomposition dec;
    CckpInstance neigh_inst;
    std::vector<Rat> yT;
    std::optional<ConfLpSolution> conf_z;
    Rat conf_scale = Rat(1);
  };
  std::optional<Captured> cap;
  int cuts_used = 0;

  auto decompose_at = [&](const std::vector<double>& point) -> Captured {
    Captured c;
    FractionalSolution frac = extract_fractional(inst, lpmodel, point, radius);
    c.dec = strong_decompose_with_params(g, frac, config.delta, params);
    for (const auto& part : c.dec.neighborhoods) {
      CckpMachine m;
      Rat demand(0);
      for (int v : part.clients) demand += inst.client_weight[v - inst.num_facilities()];
      m.demand = demand;
      m.cardinality = inst.soft_capacities ? CckpInstance::kUnbounded
                                           : std::int64_t(part.facilities.size());
      c.neigh_inst.machines.push_back(m);
    }
    for (const auto& t : inst.profile) c.neigh_inst.job_types.push_back(t.cap);
    c.yT.assign(inst.num_types(), Rat(0));
    for (const auto& part : c.dec.neighborhoods)
      for (int i : part.facilities)
        for (int p = 0; p < inst.num_types(); ++p) c.yT[p] += frac.y[i][p];
    return c;
  };

  if (config.mode == PipelineMode::StrongSoft) {
    lp::LpOutcome out = lp::solve(lpmodel.sys);
    if (out.status != lp::LpStatus::Feasible)
      return fail(FailureKind::LpInfeasible, "assignment LP infeasible at this radius");
    cap = decompose_at(out.point);
  } else {
    // Round-and-cut: separate the aggregated neighborhood supply from the
    // configuration polyhedron and cut over the y variables.
    double eps = config.separation_eps > 0 ? config.separation_eps : config.delta.to_double();
    int cut_serial = 0;
    auto separate =
        [&](const std::vector<double>& point) -> std::optional<lp::Constraint> {
      Captured c = decompose_at(point);
      if (c.neigh_inst.machines.empty()) {
        cap = std::move(c);
        return std::nullopt;
      }
      PConfResult sep = p_conf_separation(c.neigh_inst, c.yT, eps);
      if (sep.accepted) {
        c.conf_z = std::move(sep.z);
        c.conf_scale = Rat(1) + Rat::from_double(eps);
        cap = std::move(c);
        return std::nullopt;
      }
      lp::Constraint cut;
      cut.rel = lp::Rel::Ge;
      cut.rhs = sep.hyperplane.machine_side().to_double();
      cut.name = "supply_cut_" + std::to_string(cut_serial++);
      std::set<int> in_t;
      for (const auto& part : c.dec.neighborhoods)
        in_t.insert(part.facilities.begin(), part.facilities.end());
      for (int i : in_t)
        for (int p = 0; p < inst.num_types(); ++p)
          if (!(sep.hyperplane.alpha[p] == Rat(0)))
            cut.coeffs.push_back({lpmodel.yvar[i][p], sep.hyperplane.alpha[p].to_double()});
      return cut;
    };
    lp::CutLoopResult loop;
    try {
      loop = lp::cutting_plane_solve(lpmodel.sys, separate, config.max_cut_rounds);
    } catch (const RoundLimit& e) {
      return fail(FailureKind::CutLimit, e.what());
    } catch (const OracleGuard& e) {
      return fail(FailureKind::Guard, e.what());
    }
    cuts_used = loop.rounds;
    if (loop.kind == lp::CutLoopResult::Kind::Infeasible) {
      PipelineResult r = fail(FailureKind::CutProvedInfeasible,
                              "base LP plus supply cuts proved infeasible");
      r.cuts = cuts_used;
      return r;
    }
    if (loop.kind == lp::CutLoopResult::Kind::CutLimit) {
      PipelineResult r = fail(FailureKind::CutLimit, "cut round limit reached");
      r.cuts = cuts_used;
      return r;
    }
  }

  Captured& c = *cap;
  trace(config, "strong_decomposition",
        "\"roundable\":" + std::to_string(c.dec.roundable.size()) +
            ",\"neighborhoods\":" + std::to_string(c.dec.neighborhoods.size()) +
            ",\"deleted\":" + std::to_string(c.dec.c_d.size()) +
            ",\"cuts\":" + std::to_string(cuts_used));

  // ---- capacity transfer on the merged real/class scale ----
  const int P = inst.num_types();
  std::vector<Rat> scale_values;
  for (const auto& t : inst.profile) scale_values.push_back(t.cap);
  for (const auto& sk : c.dec.roundable)
    for (const auto& [i, v] : sk.opened) scale_values.push_back(v);
  std::sort(scale_values.begin(), scale_values.end());
  scale_values.erase(std::unique(scale_values.begin(), scale_values.end()),
                     scale_values.end());
  const int Q = int(scale_values.size());
  auto entry_of = [&](const Rat& v) {
    return int(std::lower_bound(scale_values.begin(), scale_values.end(), v) -
               scale_values.begin());
  };
  std::vector<std::int64_t> s_counts(Q, 0), k_counts(Q, 0);
  std::vector<Rat> y_scale(Q, Rat(0));
  std::vector<std::vector<std::pair<int, Rat>>> opened_all;  // per set
  for (const auto& sk : c.dec.roundable) {
    opened_all.push_back(sk.opened);
    for (const auto& [i, v] : sk.opened) ++s_counts[entry_of(v)];
  }
  for (int p = 0; p < P; ++p) k_counts[entry_of(inst.profile[p].cap)] += inst.profile[p].count;
  {
    // y^S mass per real capacity entry
    std::set<int> in_s;
    for (const auto& sk : c.dec.roundable)
      in_s.insert(sk.facilities.begin(), sk.facilities.end());
    for (int i : in_s)
      for (int p = 0; p < P; ++p) y_scale[entry_of(inst.profile[p].cap)] += c.dec.y_source[i][p];
  }

  // precondition failures in here are decomposition bugs by contract
  TransferResult tr = transfer_capacities(scale_values, s_counts, y_scale, k_counts);

  // residual supply for the neighborhoods, on real types
  SupplyVector t_supply;
  t_supply.counts.assign(P, 0);
  for (int p = 0; p < P; ++p) t_supply.counts[p] = tr.t_residual[entry_of(inst.profile[p].cap)];
  // suffix domination of y^T, asserted per run
  {
    Rat ts(0), ys(0);
    for (int p = P - 1; p >= 0; --p) {
      ts += Rat(t_supply.counts[p]);
      ys += c.yT[p];
      if (ts < ys)
        throw std::logic_error("pipeline: residual supply fails to dominate y^T");
    }
  }

  // ---- neighborhood allocations ----
  Allocation neigh_alloc;
  if (!c.neigh_inst.machines.empty()) {
    if (config.mode == PipelineMode::StrongSoft) {
      GreedyOutcome gr = greedy_qcmin(c.neigh_inst, t_supply);
      if (!gr.allocation) {
        // Snapping can shave the implied-membership margin; retry with a
        // whisker of demand slack before declaring a bug.
        CckpInstance relaxed = c.neigh_inst;
        for (auto& m : relaxed.machines) m.demand = m.demand * Rat(99999, 100000);
        gr = greedy_qcmin(relaxed, t_supply);
        if (!gr.allocation)
          throw std::logic_error("pipeline: implied membership failed (soft mode)");
      }
      neigh_alloc = *gr.allocation;
    } else {
      ConfLpSolution zt =
          shift_witness_conf(c.neigh_inst, *c.conf_z, c.yT, [&] {
            std::vector<Rat> t(P);
            for (int p = 0; p < P; ++p) t[p] = Rat(t_supply.counts[p]);
            return t;
          }());
      neigh_alloc = conf_lp_round(c.neigh_inst, t_supply, zt, c.conf_scale);
    }
  }

  // ---- assembly ----
  Assembler as(inst, g, config);
  std::map<int, std::vector<int>> part_extra;   // deleted -> part
  std::vector<int> cb_extra;                    // deleted charged to C_b targets
  {
    std::map<int, int> owner;  // client vertex -> part
    for (std::size_t l = 0; l < c.dec.neighborhoods.size(); ++l)
      for (int v : c.dec.neighborhoods[l].clients) owner[v] = int(l);
    std::set<int> cbset(c.dec.c_b.begin(), c.dec.c_b.end());
    for (int v : c.dec.c_d) {
      const ChargeEntry* best = nullptr;
      for (const auto& e : c.dec.charge)
        if (e.deleted == v && (!best || e.weight > best->weight ||
                               (e.weight == best->weight && e.target < best->target)))
          best = &e;
      if (!best) throw std::logic_error("pipeline: deleted client without charge row");
      if (auto it = owner.find(best->target); it != owner.end())
        part_extra[it->second].push_back(v);
      else if (cbset.count(best->target))
        cb_extra.push_back(v);
      else
        throw std::logic_error("pipeline: charge target neither in C_bb nor C_b");
    }
  }

  for (std::size_t l = 0; l < c.dec.neighborhoods.size(); ++l) {
    std::vector<int> ids =
        as.install_part(c.dec.neighborhoods[l].facilities, neigh_alloc.per_machine[l]);
    std::vector<int> clients;
    for (int v : c.dec.neighborhoods[l].clients) clients.push_back(v - inst.num_facilities());
    if (auto it = part_extra.find(int(l)); it != part_extra.end())
      for (int v : it->second) clients.push_back(v - inst.num_facilities());
    if (!clients.empty() && ids.empty())
      return fail(FailureKind::MatchingFailed,
                  "neighborhood " + std::to_string(l) + " received no capacity");
    greedy_fill(inst, ids, as.slots, as.load, clients, as.assignment);
  }

  // roundable side: install upgraded slots, flow-match C_b on xhat support
  {
    std::vector<int> rb_slot_ids;
    std::vector<int> slot_set;  // parallel: which roundable set a slot came from
    int slot_cursor = 0;
    // expansion order of transfer_capacities: entries descending, per-entry
    // slots in the order encountered; rebuild the same order
    std::vector<std::pair<Rat, std::pair<int, int>>> slots_desc;  // (value, (set, facility))
    for (std::size_t k = 0; k < opened_all.size(); ++k)
      for (const auto& [i, v] : opened_all[k]) slots_desc.push_back({v, {int(k), i}});
    std::stable_sort(slots_desc.begin(), slots_desc.end(),
                     [&](const auto& a, const auto& b) { return entry_of(a.first) > entry_of(b.first); });
    for (const auto& [v, ki] : slots_desc) {
      int entry = tr.upgrade[slot_cursor++];
      // entry -> real profile type
      int type = -1;
      for (int p = 0; p < P; ++p)
        if (inst.profile[p].cap == scale_values[entry]) type = p;
      if (type < 0) throw std::logic_error("pipeline: upgrade landed on a class entry");
      as.slots.push_back({ki.second, type});
      as.load.push_back(Rat(0));
      rb_slot_ids.push_back(int(as.slots.size()) - 1);
      slot_set.push_back(ki.first);
    }

    std::vector<int> cb_clients;
    for (int v : c.dec.c_b) cb_clients.push_back(v - inst.num_facilities());
    for (int v : cb_extra) cb_clients.push_back(v - inst.num_facilities());
    if (!cb_clients.empty()) {
      // edge: client may use any slot of a set where it retains xhat mass;
      // deleted extras inherit their target's edges
      std::vector<std::vector<int>> edges(cb_clients.size());
      auto set_has_mass = [&](int set_idx, int j) {
        for (int i : c.dec.roundable[set_idx].facilities)
          for (int p = 0; p < P; ++p)
            if (c.dec.xhat[i][j][p] > Rat(0)) return true;
        return false;
      };
      std::map<int, int> target_of;  // deleted vertex -> target client idx
      for (int v : cb_extra) {
        const ChargeEntry* best = nullptr;
        for (const auto& e : c.dec.charge)
          if (e.deleted == v && (!best || e.weight > best->weight)) best = &e;
        target_of[v] = best->target - inst.num_facilities();
      }
      for (std::size_t ci = 0; ci < cb_clients.size(); ++ci) {
        int j = cb_clients[ci];
        int probe = j;
        if (ci >= c.dec.c_b.size()) probe = target_of.at(inst.client_vertex(j));
        for (std::size_t s = 0; s < rb_slot_ids.size(); ++s)
          if (set_has_mass(slot_set[s], probe)) edges[ci].push_back(int(s));
      }
      std::vector<Rat> rb_load(rb_slot_ids.size(), Rat(0));
      std::vector<int> rb_assign(inst.num_clients(), -1);
      std::vector<Slot> rb_slots;
      for (int id : rb_slot_ids) rb_slots.push_back(as.slots[id]);
      std::vector<int> local_clients = cb_clients;
      auto got = flow_fill(inst, rb_slots, local_clients, edges, rb_load, rb_assign);
      if (!got)
        return fail(FailureKind::MatchingFailed, "roundable-side matching infeasible");
      for (std::size_t ci = 0; ci < cb_clients.size(); ++ci) {
        as.assignment[cb_clients[ci]] = rb_slot_ids[rb_assign[cb_clients[ci]]];
        as.load[rb_slot_ids[rb_assign[cb_clients[ci]]]] += Rat(1);
      }
    }
  }

  as.hop_budget = std::max(2 * params.t_star, 1 + params.diam_bound) +
                  std::max(c.dec.charge_hop_support, 0);

  PipelineResult res;
  res.cuts = cuts_used;
  res.solution = as.finish(radius);
  res.quality = evaluate_solution(inst, *res.solution, radius);
  res.solution_max_hops = measured_hops(inst, g, *res.solution);
  res.hop_budget = as.hop_budget;
  if (res.solution_max_hops < 0 || res.solution_max_hops > res.hop_budget)
    return fail(FailureKind::MatchingFailed, "assignment exceeded the hop budget");
  trace(config, "solution",
        "\"b\":\"" + res.quality.capacity_factor.str() +
            "\",\"hops\":" + std::to_string(res.solution_max_hops));
  return res;
}

GuessResult guess_opt(const MckcInstance& inst, const PipelineConfig& config) {
  std::vector<Rat> candidates;
  for (int i = 0; i < inst.num_facilities(); ++i)
    for (int j = 0; j < inst.num_clients(); ++j) {
      const Dist& d = inst.dist_fc(i, j);
      if (!d.is_infinite()) candidates.push_back(d.value());
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  GuessResult out;
  if (candidates.empty()) {
    out.result = fail(FailureKind::LpInfeasible, "no finite facility-client distance");
    return out;
  }
  int lo = 0, hi = int(candidates.size()) - 1, first = -1;
  PipelineResult best;
  while (lo <= hi) {
    int mid = (lo + hi) / 2;
    PipelineResult r = solve_at_radius(inst, candidates[mid], config);
    if (r.ok()) {
      best = std::move(r);
      first = mid;
      hi = mid - 1;
    } else {
      if (r.failure != FailureKind::LpInfeasible &&
          r.failure != FailureKind::CutProvedInfeasible) {
        out.result = std::move(r);  // uncertified failure aborts the search
        return out;
      }
      lo = mid + 1;
    }
  }
  if (first < 0) {
    out.result = fail(FailureKind::LpInfeasible, "infeasible at every candidate radius");
    return out;
  }
  out.radius = candidates[first];
  out.result = std::move(best);
  return out;
}

}  // namespace mckc
