#include "mckc/io.hpp"

#include <algorithm>

namespace mckc::io {

json rat_to_json(const Rat& r) {
  if (r.is_integer()) return json(r.num());
  return json(r.str());
}

Rat rat_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_number_float()) return Rat::from_double(j.get<double>());
  if (j.is_string()) {
    try {
      return Rat::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": bad rational '" + j.get<std::string>() + "'");
    }
  }
  throw ParseError(where + ": expected a number or 'p/q' string");
}

json dist_to_json(const Dist& d) {
  if (d.is_infinite()) return json("inf");
  return rat_to_json(d.value());
}

Dist dist_from_json(const json& j, const std::string& where) {
  if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity"))
    return Dist::infinity();
  return Dist(rat_from_json(j, where));
}

json instance_to_json(const MckcInstance& inst) {
  json j;
  j["facilities"] = inst.facility_names;
  j["clients"] = inst.client_names;
  json rows = json::array();
  for (const auto& row : inst.distance) {
    json r = json::array();
    for (const Dist& d : row) r.push_back(dist_to_json(d));
    rows.push_back(std::move(r));
  }
  j["distance"] = std::move(rows);
  json w = json::array();
  for (const Rat& r : inst.client_weight) w.push_back(rat_to_json(r));
  j["weights"] = std::move(w);
  json caps = json::array();
  for (const auto& t : inst.profile)
    caps.push_back(json{{"count", t.count}, {"cap", rat_to_json(t.cap)}});
  j["capacities"] = std::move(caps);
  j["soft"] = inst.soft_capacities;
  return j;
}

MckcInstance instance_from_json(const json& j) {
  MckcInstance inst;
  if (!j.is_object()) throw ParseError("instance: expected an object");
  if (!j.contains("facilities") || !j.contains("clients"))
    throw ParseError("instance: missing facilities/clients");
  for (const auto& f : j.at("facilities"))
    inst.facility_names.push_back(f.is_string() ? f.get<std::string>() : f.dump());
  for (const auto& c : j.at("clients"))
    inst.client_names.push_back(c.is_string() ? c.get<std::string>() : c.dump());
  const int n = inst.num_vertices();

  if (!j.contains("distance")) throw ParseError("instance.distance: missing");
  const json& dj = j.at("distance");
  if (dj.is_array()) {
    if (int(dj.size()) != n) throw ParseError("instance.distance: wrong row count");
    for (int a = 0; a < n; ++a) {
      if (!dj[a].is_array() || int(dj[a].size()) != n)
        throw ParseError("instance.distance[" + std::to_string(a) + "]: wrong length");
      inst.distance.emplace_back();
      for (int b = 0; b < n; ++b)
        inst.distance.back().push_back(
            dist_from_json(dj[a][b], "instance.distance[" + std::to_string(a) + "][" +
                                         std::to_string(b) + "]"));
    }
  } else if (dj.is_object() && dj.contains("edges")) {
    bool inf_default = dj.value("infinity_default", true);
    inst.distance.assign(
        n, std::vector<Dist>(n, inf_default ? Dist::infinity() : Dist(Rat(0))));
    for (int a = 0; a < n; ++a) inst.distance[a][a] = Dist(Rat(0));
    std::map<std::string, int> index;
    for (int a = 0; a < n; ++a)
      index[a < inst.num_facilities()
                ? inst.facility_names[a]
                : inst.client_names[a - inst.num_facilities()]] = a;
    for (const auto& e : dj.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("instance.distance.edges: bad entry");
      auto resolve = [&](const json& v) {
        std::string key = v.is_string() ? v.get<std::string>() : v.dump();
        auto it = index.find(key);
        if (it == index.end()) throw ParseError("instance.distance.edges: unknown id " + key);
        return it->second;
      };
      int a = resolve(e[0]), b = resolve(e[1]);
      Dist d = dist_from_json(e[2], "instance.distance.edges");
      inst.distance[a][b] = d;
      inst.distance[b][a] = d;
    }
  } else {
    throw ParseError("instance.distance: expected a matrix or an edges object");
  }

  if (j.contains("weights")) {
    for (const auto& w : j.at("weights"))
      inst.client_weight.push_back(rat_from_json(w, "instance.weights"));
    if (int(inst.client_weight.size()) != inst.num_clients())
      throw ParseError("instance.weights: length mismatch");
  } else {
    inst.client_weight.assign(inst.num_clients(), Rat(1));
  }
  if (!j.contains("capacities")) throw ParseError("instance.capacities: missing");
  for (const auto& t : j.at("capacities")) {
    if (!t.contains("count") || !t.contains("cap"))
      throw ParseError("instance.capacities: entries need count and cap");
    inst.profile.push_back(
        {t.at("count").get<std::int64_t>(), rat_from_json(t.at("cap"), "instance.capacities")});
  }
  std::sort(inst.profile.begin(), inst.profile.end(),
            [](const CapacityType& a, const CapacityType& b) { return a.cap < b.cap; });
  inst.soft_capacities = j.value("soft", false);
  return inst;
}

json cckp_to_json(const CckpInstance& inst) {
  json j;
  json ms = json::array();
  for (const auto& m : inst.machines) {
    json e{{"demand", rat_to_json(m.demand)}};
    if (m.cardinality == CckpInstance::kUnbounded)
      e["cardinality"] = "inf";
    else
      e["cardinality"] = m.cardinality;
    ms.push_back(std::move(e));
  }
  j["machines"] = std::move(ms);
  json ts = json::array();
  for (const Rat& c : inst.job_types) ts.push_back(rat_to_json(c));
  j["job_types"] = std::move(ts);
  return j;
}

CckpInstance cckp_from_json(const json& j) {
  CckpInstance inst;
  if (!j.contains("machines") || !j.contains("job_types"))
    throw ParseError("cckp: missing machines/job_types");
  for (const auto& m : j.at("machines")) {
    CckpMachine mc;
    mc.demand = rat_from_json(m.at("demand"), "cckp.machines.demand");
    if (!m.contains("cardinality") ||
        (m.at("cardinality").is_string() && m.at("cardinality").get<std::string>() == "inf"))
      mc.cardinality = CckpInstance::kUnbounded;
    else
      mc.cardinality = m.at("cardinality").get<std::int64_t>();
    inst.machines.push_back(mc);
  }
  for (const auto& c : j.at("job_types"))
    inst.job_types.push_back(rat_from_json(c, "cckp.job_types"));
  return inst;
}

json supply_to_json(const SupplyVector& s) {
  json j;
  j["counts"] = s.counts;
  return j;
}

SupplyVector supply_from_json(const json& j) {
  SupplyVector s;
  if (!j.contains("counts")) throw ParseError("supply: missing counts");
  for (const auto& c : j.at("counts")) s.counts.push_back(c.get<std::int64_t>());
  return s;
}

json solution_to_json(const MckcInstance& inst, const McKcSolution& sol) {
  json j;
  j["radius"] = rat_to_json(sol.radius_guess);
  json pl = json::array();
  for (auto [i, p] : sol.placements)
    pl.push_back(json{{"facility", inst.facility_names[i]}, {"type", p}});
  j["placements"] = std::move(pl);
  json as = json::object();
  for (int c = 0; c < int(sol.assignment.size()); ++c)
    as[inst.client_names[c]] = sol.assignment[c];
  j["assignment"] = std::move(as);
  return j;
}

McKcSolution solution_from_json(const MckcInstance& inst, const json& j) {
  McKcSolution sol;
  sol.radius_guess = rat_from_json(j.at("radius"), "solution.radius");
  std::map<std::string, int> fidx;
  for (int i = 0; i < inst.num_facilities(); ++i) fidx[inst.facility_names[i]] = i;
  for (const auto& p : j.at("placements")) {
    auto it = fidx.find(p.at("facility").get<std::string>());
    if (it == fidx.end()) throw ParseError("solution.placements: unknown facility");
    sol.placements.emplace_back(it->second, p.at("type").get<int>());
  }
  sol.assignment.assign(inst.num_clients(), -1);
  std::map<std::string, int> cidx;
  for (int c = 0; c < inst.num_clients(); ++c) cidx[inst.client_names[c]] = c;
  for (const auto& [key, v] : j.at("assignment").items()) {
    auto it = cidx.find(key);
    if (it == cidx.end()) throw ParseError("solution.assignment: unknown client " + key);
    sol.assignment[it->second] = v.get<int>();
  }
  return sol;
}

json quality_to_json(const QualityReport& q) {
  json j;
  j["max_assignment_distance"] = dist_to_json(q.max_assignment_distance);
  j["distance_factor"] = dist_to_json(q.distance_factor);
  j["capacity_factor"] = rat_to_json(q.capacity_factor);
  j["feasible_counts"] = q.feasible_counts;
  return j;
}

json farkas_to_json(const FarkasCert& cert) {
  json a = json::array(), b = json::array();
  for (const Rat& r : cert.alpha) a.push_back(rat_to_json(r));
  for (const Rat& r : cert.beta) b.push_back(rat_to_json(r));
  return json{{"alpha", std::move(a)}, {"beta", std::move(b)}};
}

FarkasCert farkas_from_json(const json& j) {
  FarkasCert c;
  for (const auto& a : j.at("alpha")) c.alpha.push_back(rat_from_json(a, "farkas.alpha"));
  for (const auto& b : j.at("beta")) c.beta.push_back(rat_from_json(b, "farkas.beta"));
  return c;
}

namespace {

json vertex_names(const MckcInstance& inst, const std::vector<int>& vs) {
  json out = json::array();
  for (int v : vs)
    out.push_back(v < inst.num_facilities()
                      ? inst.facility_names[v]
                      : inst.client_names[v - inst.num_facilities()]);
  return out;
}

json charge_to_json(const MckcInstance& inst, const std::vector<ChargeEntry>& charge) {
  json out = json::array();
  for (const auto& e : charge)
    out.push_back(json{{"deleted", inst.client_names[e.deleted - inst.num_facilities()]},
                       {"target", inst.client_names[e.target - inst.num_facilities()]},
                       {"weight", rat_to_json(e.weight)}});
  return out;
}

}  // namespace

namespace {

std::map<std::string, int> vertex_index(const MckcInstance& inst) {
  std::map<std::string, int> idx;
  for (int v = 0; v < inst.num_vertices(); ++v)
    idx[v < inst.num_facilities() ? inst.facility_names[v]
                                  : inst.client_names[v - inst.num_facilities()]] = v;
  return idx;
}

std::vector<int> vertices_from(const json& arr, const std::map<std::string, int>& idx) {
  std::vector<int> out;
  for (const auto& v : arr) {
    auto it = idx.find(v.get<std::string>());
    if (it == idx.end()) throw ParseError("decomposition: unknown vertex " + v.dump());
    out.push_back(it->second);
  }
  return out;
}

std::vector<ChargeEntry> charge_from_json(const json& arr,
                                          const std::map<std::string, int>& idx) {
  std::vector<ChargeEntry> out;
  for (const auto& e : arr)
    out.push_back({idx.at(e.at("deleted").get<std::string>()),
                   idx.at(e.at("target").get<std::string>()),
                   rat_from_json(e.at("weight"), "phi.weight")});
  return out;
}

json tensor_to_json(const std::vector<std::vector<std::vector<Rat>>>& x) {
  json out = json::array();
  for (const auto& by_client : x) {
    json a = json::array();
    for (const auto& row : by_client) {
      json b = json::array();
      for (const Rat& v : row) b.push_back(rat_to_json(v));
      a.push_back(std::move(b));
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<std::vector<std::vector<Rat>>> tensor_from_json(const json& j) {
  std::vector<std::vector<std::vector<Rat>>> out;
  for (const auto& a : j) {
    out.emplace_back();
    for (const auto& b : a) {
      out.back().emplace_back();
      for (const auto& v : b) out.back().back().push_back(rat_from_json(v, "tensor"));
    }
  }
  return out;
}

}  // namespace

json weak_decomposition_to_json(const MckcInstance& inst, const WeakDecomposition& d) {
  json parts = json::array();
  for (const auto& p : d.parts)
    parts.push_back(json{{"facilities", vertex_names(inst, p.facilities)},
                         {"clients", vertex_names(inst, p.clients)},
                         {"grown_t", p.grown_t}});
  return json{{"mode", "weak"},
              {"epsilon", rat_to_json(d.epsilon)},
              {"parts", std::move(parts)},
              {"deleted", vertex_names(inst, d.deleted)},
              {"phi", charge_to_json(inst, d.charge)}};
}

WeakDecomposition weak_decomposition_from_json(const MckcInstance& inst, const json& j) {
  WeakDecomposition d;
  auto idx = vertex_index(inst);
  d.epsilon = rat_from_json(j.at("epsilon"), "epsilon");
  for (const auto& p : j.at("parts")) {
    NeighborhoodPart part;
    part.facilities = vertices_from(p.at("facilities"), idx);
    part.clients = vertices_from(p.at("clients"), idx);
    part.grown_t = p.value("grown_t", 0);
    d.parts.push_back(std::move(part));
  }
  d.deleted = vertices_from(j.at("deleted"), idx);
  d.charge = charge_from_json(j.at("phi"), idx);
  return d;
}

json strong_decomposition_to_json(const MckcInstance& inst, const StrongDecomposition& d) {
  json rsets = json::array();
  for (const auto& s : d.roundable) {
    json opened = json::array();
    for (const auto& [i, v] : s.opened)
      opened.push_back(
          json{{"facility", inst.facility_names[i]}, {"class_value", rat_to_json(v)}});
    rsets.push_back(json{{"facilities", vertex_names(inst, s.facilities)},
                         {"root", inst.facility_names[s.root]},
                         {"ybar", std::move(opened)}});
  }
  json parts = json::array();
  for (const auto& p : d.neighborhoods)
    parts.push_back(json{{"facilities", vertex_names(inst, p.facilities)},
                         {"clients", vertex_names(inst, p.clients)}});
  json yv = json::array();
  for (const auto& row : d.y_source) {
    json r = json::array();
    for (const Rat& v : row) r.push_back(rat_to_json(v));
    yv.push_back(std::move(r));
  }
  return json{{"mode", "strong"},
              {"delta", rat_to_json(d.delta)},
              {"epsilon", rat_to_json(d.params.epsilon)},
              {"roundable", std::move(rsets)},
              {"neighborhoods", std::move(parts)},
              {"C_b", vertex_names(inst, d.c_b)},
              {"C_bb", vertex_names(inst, d.c_bb)},
              {"C_d", vertex_names(inst, d.c_d)},
              {"phi", charge_to_json(inst, d.charge)},
              {"xhat", tensor_to_json(d.xhat)},
              {"y", std::move(yv)}};
}

StrongDecomposition strong_decomposition_from_json(const MckcInstance& inst, const json& j) {
  StrongDecomposition d;
  auto idx = vertex_index(inst);
  d.delta = rat_from_json(j.value("delta", json(1)), "delta");
  d.params = StrongParams::from_delta(min(d.delta, Rat(99, 100)));
  if (j.contains("epsilon")) d.params.epsilon = rat_from_json(j.at("epsilon"), "epsilon");
  for (const auto& s : j.at("roundable")) {
    RoundableSet sk;
    sk.facilities = vertices_from(s.at("facilities"), idx);
    sk.root = idx.at(s.at("root").get<std::string>());
    for (const auto& o : s.at("ybar"))
      sk.opened.emplace_back(idx.at(o.at("facility").get<std::string>()),
                             rat_from_json(o.at("class_value"), "ybar"));
    d.roundable.push_back(std::move(sk));
  }
  for (const auto& p : j.at("neighborhoods")) {
    NeighborhoodPart part;
    part.facilities = vertices_from(p.at("facilities"), idx);
    part.clients = vertices_from(p.at("clients"), idx);
    d.neighborhoods.push_back(std::move(part));
  }
  d.c_b = vertices_from(j.at("C_b"), idx);
  d.c_bb = vertices_from(j.at("C_bb"), idx);
  d.c_d = vertices_from(j.at("C_d"), idx);
  d.charge = charge_from_json(j.at("phi"), idx);
  d.xhat = tensor_from_json(j.at("xhat"));
  for (const auto& row : j.at("y")) {
    d.y_source.emplace_back();
    for (const auto& v : row) d.y_source.back().push_back(rat_from_json(v, "y"));
  }
  return d;
}

json allocation_to_json(const Allocation& a) {
  json j = json::array();
  for (const auto& jobs : a.per_machine) j.push_back(jobs);
  return json{{"per_machine", std::move(j)}};
}

Allocation allocation_from_json(const json& j) {
  Allocation a;
  for (const auto& jobs : j.at("per_machine")) a.per_machine.push_back(jobs.get<std::vector<int>>());
  return a;
}

json conf_solution_to_json(const ConfLpSolution& z) {
  json machines = json::array();
  for (const auto& row : z.z) {
    json entries = json::array();
    for (const auto& [cfg, mass] : row) {
      json c = json::array();
      for (auto [t, n] : cfg) c.push_back(json::array({t, n}));
      entries.push_back(json{{"config", std::move(c)}, {"mass", rat_to_json(mass)}});
    }
    machines.push_back(std::move(entries));
  }
  return json{{"z", std::move(machines)}};
}

ConfLpSolution conf_solution_from_json(const json& j) {
  ConfLpSolution z;
  for (const auto& row : j.at("z")) {
    z.z.emplace_back();
    for (const auto& e : row) {
      Config cfg;
      for (const auto& pair : e.at("config"))
        cfg.emplace_back(pair[0].get<int>(), pair[1].get<int>());
      z.z.back().push_back({cfg, rat_from_json(e.at("mass"), "conf.z.mass")});
    }
  }
  return z;
}

json mckc_gap_to_json(const MckcGap& g) {
  json j = instance_to_json(g.instance);
  json y = json::array(), x = json::array();
  for (int i = 0; i < g.instance.num_facilities(); ++i) {
    json row = json::array();
    for (const Rat& v : g.witness.y[i]) row.push_back(rat_to_json(v));
    y.push_back(std::move(row));
  }
  for (int i = 0; i < g.instance.num_facilities(); ++i) {
    json by_client = json::array();
    for (int c = 0; c < g.instance.num_clients(); ++c) {
      json row = json::array();
      for (const Rat& v : g.witness.x[i][c]) row.push_back(rat_to_json(v));
      by_client.push_back(std::move(row));
    }
    x.push_back(std::move(by_client));
  }
  j["witness"] = json{{"radius", rat_to_json(g.witness.radius)},
                      {"y", std::move(y)},
                      {"x", std::move(x)}};
  return j;
}

json petersen_to_json(const PetersenGap& g) {
  json j = cckp_to_json(g.instance);
  json edges = json::array();
  for (auto [a, b] : g.edges) edges.push_back(json::array({a, b}));
  json supplies = json::array();
  for (const auto& s : g.matching_supplies) supplies.push_back(supply_to_json(s));
  j["witness"] = json{{"edges", std::move(edges)},
                      {"matching_supplies", std::move(supplies)},
                      {"mixture", supply_to_json(g.mixture)}};
  return j;
}

json conf_gap_to_json(const ConfGap& g) {
  json j = cckp_to_json(g.instance);
  j["supply"] = supply_to_json(g.supply);
  j["witness"] = conf_solution_to_json(g.witness);
  return j;
}

json bs_gap_to_json(const BansalSviridenkoGap& g) {
  json j = cckp_to_json(g.instance);
  j["supply"] = supply_to_json(g.supply);
  json adm = json::array();
  for (const auto& row : g.admissible) {
    json r = json::array();
    for (bool b : row) r.push_back(b);
    adm.push_back(std::move(r));
  }
  j["admissible"] = std::move(adm);
  j["witness"] = conf_solution_to_json(g.witness);
  return j;
}

}  // namespace mckc::io
