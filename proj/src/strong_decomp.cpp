#include "mckc/strong_decomp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <set>

namespace mckc {

FractionalSolution FractionalSolution::from_doubles(
    const MckcInstance& inst, const std::vector<std::vector<double>>& y,
    const std::vector<std::vector<std::vector<double>>>& x, const Rat& radius) {
  FractionalSolution f;
  f.radius = radius;
  const int F = inst.num_facilities(), C = inst.num_clients(), P = inst.num_types();
  f.y.assign(F, std::vector<Rat>(P, Rat(0)));
  f.x.assign(F, std::vector<std::vector<Rat>>(C, std::vector<Rat>(P, Rat(0))));
  for (int i = 0; i < F; ++i)
    for (int p = 0; p < P; ++p) {
      // LP hygiene: treat dust as zero; openings never exceed k_p (L3)
      double cap = double(inst.profile[p].count);
      f.y[i][p] = y[i][p] < 1e-12 ? Rat(0) : Rat::from_double(std::min(y[i][p], cap));
    }
  for (int i = 0; i < F; ++i)
    for (int j = 0; j < C; ++j)
      for (int p = 0; p < P; ++p) {
        double v = x[i][j][p];
        if (v < 1e-12) continue;
        Rat r = Rat::from_double(v);
        f.x[i][j][p] = min(r, f.y[i][p]);  // keep (L4) exact after snapping
      }
  return f;
}

std::optional<std::string> check_fractional(const MckcInstance& inst,
                                            const FractionalSolution& f, const Rat& slack) {
  const int F = inst.num_facilities(), C = inst.num_clients(), P = inst.num_types();
  if (int(f.y.size()) != F || int(f.x.size()) != F) return "fractional: shape mismatch";
  for (int j = 0; j < C; ++j) {
    Rat s(0);
    for (int i = 0; i < F; ++i)
      for (int p = 0; p < P; ++p) s += f.x[i][j][p];
    if (s < Rat(1) - slack) return "L1 violated at client " + std::to_string(j);
  }
  for (int i = 0; i < F; ++i)
    for (int p = 0; p < P; ++p) {
      Rat load(0);
      for (int j = 0; j < C; ++j) load += inst.client_weight[j] * f.x[i][j][p];
      if (load > inst.profile[p].cap * f.y[i][p] + slack)
        return "L2 violated at (" + std::to_string(i) + "," + std::to_string(p) + ")";
    }
  for (int p = 0; p < P; ++p) {
    Rat s(0);
    for (int i = 0; i < F; ++i) s += f.y[i][p];
    if (s > Rat(inst.profile[p].count) + slack) return "L3 violated at type " + std::to_string(p);
  }
  for (int i = 0; i < F; ++i)
    for (int j = 0; j < C; ++j)
      for (int p = 0; p < P; ++p) {
        if (f.x[i][j][p] > f.y[i][p] + slack)
          return "L4 violated at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                 std::to_string(p) + ")";
        if (f.x[i][j][p] < Rat(0) || f.y[i][p] < Rat(0)) return "L6 violated";
        if (f.x[i][j][p] > Rat(0)) {
          const Dist& d = inst.dist_fc(i, j);
          if (d.is_infinite() || d.value() > f.radius)
            return "x supported outside the radius at (" + std::to_string(i) + "," +
                   std::to_string(j) + ")";
        }
      }
  if (!inst.soft_capacities)
    for (int i = 0; i < F; ++i) {
      Rat s(0);
      for (int p = 0; p < P; ++p) s += f.y[i][p];
      if (s > Rat(1) + slack) return "L5 violated at facility " + std::to_string(i);
    }
  return std::nullopt;
}

Rat effective_capacity(const MckcInstance& inst, const std::vector<bool>& client_alive,
                       const std::vector<std::vector<std::vector<Rat>>>& xhat,
                       const std::vector<std::vector<Rat>>& y, int facility, int type) {
  if (!(y[facility][type] > Rat(0)))
    throw std::invalid_argument("effective_capacity: y_{ip} must be positive");
  Rat s(0);
  for (int j = 0; j < inst.num_clients(); ++j)
    if (client_alive[j]) s += inst.client_weight[j] * xhat[facility][j][type];
  return s / y[facility][type];
}

StrongParams StrongParams::from_delta(const Rat& delta) {
  if (!(delta > Rat(0)) || !(delta < Rat(1)))
    throw std::invalid_argument("strong decomposition: delta must be in (0,1)");
  StrongParams p;
  p.epsilon = min(Rat(1, 12), delta / Rat(100));
  double e = p.epsilon.to_double();
  double lg = std::log(1.0 / e);
  int bound = int(std::ceil((8.0 / e) * lg));
  p.t_star = bound % 2 == 0 ? bound + 2 : bound + 1;  // smallest even integer > bound
  p.augment_radius = int(std::ceil((16.0 / e) * lg));
  p.diam_bound = int(std::ceil((50.0 / e) * lg));
  return p;
}

namespace {

struct Workspace {
  const MckcInstance& inst;
  ThresholdGraph g;  // private copy; its mask is H
  const FractionalSolution& frac;
  StrongDecomposition out;
  std::vector<bool> client_alive;           // by client-local index
  std::set<int> in_s_augmented;             // facilities added by augmentation
  std::vector<int> roots;                   // roots of roundable sets

  Workspace(const ThresholdGraph& graph, const FractionalSolution& f)
      : inst(graph.instance()), g(graph), frac(f) {
    g.reset_mask();
    client_alive.assign(inst.num_clients(), true);
  }

  int cidx(int vertex) const { return vertex - inst.num_facilities(); }

  bool facility_in_s(int i) const {
    for (const auto& s : out.roundable)
      for (int v : s.facilities)
        if (v == i) return true;
    return false;
  }

  Rat s_mass_of_client(int j) const {
    // sum of x over facilities currently in some S_k (original x: zeroing
    // only ever applies to already-absorbed clients)
    Rat s(0);
    for (const auto& sk : out.roundable)
      for (int i : sk.facilities)
        for (int p = 0; p < inst.num_types(); ++p) s += frac.x[i][j][p];
    return s;
  }

  void freeze(RoundableSet& sk, const std::vector<int>& facilities) {
    for (int i : facilities)
      for (int p = 0; p < inst.num_types(); ++p)
        if (frac.y[i][p] > Rat(0))
          sk.frozen_effc.emplace_back(
              i, p, effective_capacity(inst, client_alive, out.xhat, frac.y, i, p));
  }

  void absorb_served_clients() {
    // Everybody with more than (1-eps) of their mass on assigned roundable
    // facilities moves to C_b; their xhat loses all mass outside union(S).
    std::set<int> s_facilities;
    for (const auto& sk : out.roundable) s_facilities.insert(sk.facilities.begin(), sk.facilities.end());
    for (int j = 0; j < inst.num_clients(); ++j) {
      if (!client_alive[j]) continue;
      Rat mass(0);
      for (int i : s_facilities)
        for (int p = 0; p < inst.num_types(); ++p) mass += frac.x[i][j][p];
      if (mass > Rat(1) - out.params.epsilon) {
        out.c_b.push_back(inst.client_vertex(j));
        client_alive[j] = false;
        g.remove(inst.client_vertex(j));
        for (int i = 0; i < inst.num_facilities(); ++i)
          if (!s_facilities.count(i))
            for (int p = 0; p < inst.num_types(); ++p) out.xhat[i][j][p] = Rat(0);
      }
    }
  }

  void check_invariants() const {
    // I1: facilities in L(T) have no alive clients in their G-neighborhood.
    for (const auto& part : out.neighborhoods)
      for (int i : part.facilities)
        for (int v : g.neighbors_g(i))
          if (g.is_client(v) && client_alive[cidx(v)])
            throw std::logic_error("invariant I1 violated");
    // I2: same for facilities added to roundable sets by augmentation.
    for (int i : in_s_augmented)
      for (int v : g.neighbors_g(i))
        if (g.is_client(v) && client_alive[cidx(v)])
          throw std::logic_error("invariant I2 violated");
  }
};

}  // namespace

StrongDecomposition strong_decompose(const ThresholdGraph& g, const FractionalSolution& frac,
                                     const Rat& delta) {
  return strong_decompose_with_params(g, frac, delta, StrongParams::from_delta(delta));
}

StrongDecomposition strong_decompose_with_params(const ThresholdGraph& g,
                                                 const FractionalSolution& frac,
                                                 const Rat& delta, const StrongParams& params) {
  if (auto bad = check_fractional(g.instance(), frac, Rat(1, 1000000)))
    throw std::invalid_argument("strong_decompose: " + *bad);

  Workspace w(g, frac);
  w.out.params = params;
  w.out.delta = delta;
  w.out.xhat = frac.x;
  w.out.y_source = frac.y;
  const MckcInstance& inst = g.instance();
  const Rat& eps = params.epsilon;

  while (true) {
    w.check_invariants();
    std::vector<int> alive = w.g.alive_clients();
    if (alive.empty()) break;
    ++w.out.iterations;
    if (w.out.iterations > inst.num_vertices() + 4)
      throw std::logic_error("strong_decompose: did not terminate");

    // argmax effective capacity over alive facilities
    int bi = -1, bp = -1;
    Rat best(0);
    for (int i = 0; i < inst.num_facilities(); ++i) {
      if (!w.g.alive(i)) continue;
      for (int p = 0; p < inst.num_types(); ++p) {
        if (!(frac.y[i][p] > Rat(0))) continue;
        Rat e = effective_capacity(inst, w.client_alive, w.out.xhat, frac.y, i, p);
        if (bi < 0 || e > best) {
          best = e;
          bi = i;
          bp = p;
        }
      }
    }
    if (bi < 0 || bp < 0)
      throw RadiusInfeasible("strong_decompose: alive clients but no facility with mass");

    // smallest odd non-expanding radius, capped by t_star
    int tbar = params.t_star + 1;
    ThresholdGraph::Layered lay;
    for (int t = 1; t < params.t_star; t += 2) {
      lay = w.g.layered_neighborhood(bi, t);
      std::int64_t frontier_clients = 0, inside_clients = 0;
      for (int v : lay.frontier)
        if (w.g.is_client(v)) ++frontier_clients;
      for (int v : lay.inside)
        if (w.g.is_client(v)) ++inside_clients;
      if (Rat(frontier_clients) < eps * Rat(inside_clients)) {
        tbar = t;
        break;
      }
    }

    if (tbar == params.t_star + 1) {
      // Roundable branch: the ball expanded all the way.
      lay = w.g.layered_neighborhood(bi, params.t_star);
      RoundableSet sk;
      sk.root = bi;
      for (int v : lay.inside)
        if (w.g.is_facility(v)) sk.facilities.push_back(v);
      w.freeze(sk, sk.facilities);
      for (int v : sk.facilities) w.g.remove(v);
      w.roots.push_back(bi);
      w.out.roundable.push_back(std::move(sk));
      w.absorb_served_clients();
      continue;
    }

    lay = w.g.layered_neighborhood(bi, tbar);
    std::vector<int> f_tent, j_int, j_ext;
    for (int v : lay.inside) (w.g.is_facility(v) ? f_tent : j_int).push_back(v);
    for (int v : lay.frontier) {
      assert(w.g.is_client(v));
      j_ext.push_back(v);
    }
    assert(Rat(std::int64_t(j_ext.size())) < eps * Rat(std::int64_t(j_int.size())));

    // delete the boundary into C_d, charged uniformly onto the interior
    if (!j_ext.empty()) {
      Rat share = Rat(1) / Rat(std::int64_t(j_int.size()));
      std::vector<int> dist_from_center = w.g.hop_distances_g(bi);
      for (int v : j_ext) {
        w.out.c_d.push_back(v);
        for (int tgt : j_int) {
          w.out.charge.push_back({v, tgt, share});
          w.out.charge_hop_support =
              std::max(w.out.charge_hop_support, dist_from_center[v] + dist_from_center[tgt]);
        }
        w.client_alive[w.cidx(v)] = false;
        w.g.remove(v);
      }
    }

    // nearest roundable root in G
    int near_root = -1, near_dist = -1;
    if (!w.roots.empty()) {
      std::vector<int> dist = w.g.hop_distances_g(bi);
      for (int r : w.roots)
        if (dist[r] >= 0 && (near_root < 0 || dist[r] < near_dist)) {
          near_root = r;
          near_dist = dist[r];
        }
    }

    if (near_root >= 0 && near_dist <= params.augment_radius) {
      // augment the set rooted at near_root
      for (auto& sk : w.out.roundable)
        if (sk.root == near_root) {
          w.freeze(sk, f_tent);
          sk.facilities.insert(sk.facilities.end(), f_tent.begin(), f_tent.end());
          break;
        }
      w.in_s_augmented.insert(f_tent.begin(), f_tent.end());
      for (int v : f_tent) w.g.remove(v);
      w.absorb_served_clients();
    } else {
      NeighborhoodPart part;
      part.root = bi;
      part.grown_t = tbar;
      part.facilities = f_tent;
      part.clients = j_int;
      for (int v : j_int) {
        w.out.c_bb.push_back(v);
        w.client_alive[w.cidx(v)] = false;
        w.g.remove(v);
      }
      for (int v : f_tent) w.g.remove(v);
      w.out.neighborhoods.push_back(std::move(part));
    }
  }
  w.check_invariants();

  // Roundings for every S_k, from the frozen effective capacities.
  for (auto& sk : w.out.roundable)
    sk.opened = round_roundable_set(inst, sk.facilities, sk.frozen_effc, frac.y, eps);
  return std::move(w.out);
}

std::vector<std::pair<int, Rat>> round_roundable_set(
    const MckcInstance&, const std::vector<int>& facilities,
    const std::vector<std::tuple<int, int, Rat>>& frozen_effc,
    const std::vector<std::vector<Rat>>& y, const Rat& epsilon) {
  const double delta_d = 1.0 + epsilon.to_double();
  // bucket (i,p) pairs by floor(log_delta effc); class value snapped once
  std::map<int, Rat> class_value;
  std::map<int, Rat> bucket_mass;
  std::map<int, std::vector<int>> bucket_members;  // bucket -> facilities
  for (const auto& [i, p, effc] : frozen_effc) {
    if (!(effc > Rat(0))) continue;
    int u = int(std::floor(std::log(effc.to_double()) / std::log(delta_d) + 1e-9));
    if (!class_value.count(u)) class_value[u] = Rat::from_double(std::pow(delta_d, u), 1e-12);
    bucket_mass.try_emplace(u, Rat(0));
    bucket_mass[u] += y[i][p];
    bucket_members[u].push_back(i);
  }

  std::vector<std::pair<int, Rat>> opened;
  std::set<int> used;
  // largest classes first so the distinct-location constraint bites there last
  for (auto it = bucket_mass.rbegin(); it != bucket_mass.rend(); ++it) {
    int u = it->first;
    std::int64_t want = it->second.floor();
    if (want <= 0) continue;
    std::vector<int> cands = bucket_members[u];
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    // prefer the bucket's own facilities, then any unused one in S
    for (int i : cands) {
      if (want == 0) break;
      if (used.insert(i).second) {
        opened.emplace_back(i, class_value[u]);
        --want;
      }
    }
    std::vector<int> rest = facilities;
    std::sort(rest.begin(), rest.end());
    for (int i : rest) {
      if (want == 0) break;
      if (used.insert(i).second) {
        opened.emplace_back(i, class_value[u]);
        --want;
      }
    }
    if (want > 0) throw std::logic_error("round_roundable_set: not enough distinct locations");
  }
  return opened;
}

RoundableReport verify_roundable(const ThresholdGraph& g, const std::vector<int>& facilities,
                                 const std::vector<std::pair<int, Rat>>& opened,
                                 const std::vector<std::vector<std::vector<Rat>>>& xhat,
                                 const std::vector<std::vector<Rat>>& y, int a_hops,
                                 const Rat& b) {
  const MckcInstance& inst = g.instance();
  RoundableReport rep;
  if (facilities.empty()) {
    rep.diameter_ok = rep.condition2_ok = true;
    rep.condition1_ok = opened.empty();
    return rep;
  }
  int diam = g.hop_diameter_g(facilities);
  rep.diameter_ok = diam >= 0 && diam <= a_hops;

  // Condition 1 at every threshold on the merged real/class capacity scale.
  std::vector<Rat> thresholds;
  for (const auto& t : inst.profile) thresholds.push_back(t.cap);
  for (const auto& [i, v] : opened) thresholds.push_back(v);
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  rep.condition1_ok = true;
  for (const Rat& thr : thresholds) {
    std::int64_t slots = 0;
    for (const auto& [i, v] : opened)
      if (v >= thr) ++slots;
    Rat ymass(0);
    for (int i : facilities)
      for (int p = 0; p < inst.num_types(); ++p)
        if (inst.profile[p].cap >= thr) ymass += y[i][p];
    if (slots > ymass.floor()) rep.condition1_ok = false;
  }

  // Condition 2: served demand within b times the opened class values.
  Rat served(0);
  for (int i : facilities)
    for (int j = 0; j < inst.num_clients(); ++j)
      for (int p = 0; p < inst.num_types(); ++p)
        served += inst.client_weight[j] * xhat[i][j][p];
  Rat cap(0);
  for (const auto& [i, v] : opened) cap += v;
  rep.condition2_ok = served <= b * cap;
  return rep;
}

bool verify_complete_neighborhood(const ThresholdGraph& g, const std::vector<int>& T,
                                  const std::vector<int>& J) {
  std::set<int> tset(T.begin(), T.end());
  for (int j : J)
    for (int v : g.neighbors_g(j))
      if (!tset.count(v)) return false;
  return true;
}

std::vector<std::vector<std::vector<Rat>>> extend_deleted(
    const MckcInstance& inst, std::vector<std::vector<std::vector<Rat>>> x,
    const std::vector<ChargeEntry>& charge) {
  // validate rows sum to 1 per deleted client
  std::map<int, Rat> row;
  for (const auto& e : charge) {
    auto [it, _] = row.try_emplace(e.deleted, Rat(0));
    it->second += e.weight;
  }
  for (const auto& [j, s] : row)
    if (s != Rat(1))
      throw std::invalid_argument("extend_deleted: phi row of client " + std::to_string(j) +
                                  " sums to " + s.str());
  for (const auto& e : charge) {
    if (e.deleted < inst.num_facilities() || e.deleted >= inst.num_vertices() ||
        e.target < inst.num_facilities() || e.target >= inst.num_vertices())
      throw std::invalid_argument("extend_deleted: charge endpoints must be clients");
  }
  // deleted rows are replaced by the mixture, not stacked on stale mass
  for (const auto& [j, s] : row) {
    int jd = j - inst.num_facilities();
    for (int i = 0; i < inst.num_facilities(); ++i)
      for (int p = 0; p < inst.num_types(); ++p) x[i][jd][p] = Rat(0);
  }
  for (const auto& e : charge) {
    int jd = e.deleted - inst.num_facilities();
    int jt = e.target - inst.num_facilities();
    for (int i = 0; i < inst.num_facilities(); ++i)
      for (int p = 0; p < inst.num_types(); ++p) x[i][jd][p] += e.weight * x[i][jt][p];
  }
  return x;
}

}  // namespace mckc
