// Command-line front end: instance I/O, solvers, verifiers, generators.
//
// Exit codes: 0 success/feasible, 1 input error, 2 certified infeasible,
// 3 guard or round limit.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mckc/io.hpp"
#include "mckc/oracle.hpp"

using namespace mckc;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kInputError = 1, kInfeasible = 2, kGuard = 3;

json read_json(const std::string& path) {
  try {
    if (path.empty() || path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw io::ParseError("cannot open " + path);
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw io::ParseError(std::string("malformed JSON: ") + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

PipelineMode parse_mode(const std::string& m) {
  if (m == "weak") return PipelineMode::Weak;
  if (m == "strong-soft") return PipelineMode::StrongSoft;
  if (m == "strong-hard") return PipelineMode::StrongHard;
  throw io::ParseError("unknown mode: " + m);
}

CckpBackend parse_backend(const std::string& b) {
  if (b == "greedy") return CckpBackend::Greedy;
  if (b == "conf") return CckpBackend::ConfRound;
  if (b == "qptas") return CckpBackend::Qptas;
  if (b == "brute") return CckpBackend::Brute;
  throw io::ParseError("unknown backend: " + b);
}

int report_failure(const PipelineResult& r) {
  std::cerr << "failure: " << r.detail << "\n";
  if (r.failure == FailureKind::LpInfeasible || r.failure == FailureKind::CutProvedInfeasible)
    return kInfeasible;
  return kGuard;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heterogeneous capacitated k-center / max-min allocation solver suite"};
  app.require_subcommand(1);

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "run a solver");
  solve->require_subcommand(1);

  auto* solve_mckc = solve->add_subcommand("mckc", "bicriteria k-center solve");
  std::string sm_mode = "strong-soft", sm_in, sm_out, sm_trace;
  double sm_delta = 0.5;
  std::string sm_radius;
  std::string sm_backend = "greedy";
  solve_mckc->add_option("--mode", sm_mode, "weak|strong-soft|strong-hard");
  solve_mckc->add_option("--delta", sm_delta, "quality parameter in (0,1)");
  solve_mckc->add_option("--backend", sm_backend, "greedy|conf|qptas|brute (weak mode)");
  solve_mckc->add_option("--radius", sm_radius, "solve at a fixed radius instead of searching");
  solve_mckc->add_option("--in", sm_in, "instance JSON (default stdin)");
  solve_mckc->add_option("--out", sm_out, "solution JSON (default stdout)");
  solve_mckc->add_option("--trace", sm_trace, "JSON-lines event trace file");

  auto* solve_cckp = solve->add_subcommand("cckp", "max-min allocation solve");
  std::string sc_backend = "greedy", sc_in, sc_supply;
  double sc_eps = 0.2;
  solve_cckp->add_option("--backend", sc_backend, "greedy|conf|qptas|brute");
  solve_cckp->add_option("--epsilon", sc_eps, "precision for conf/qptas");
  solve_cckp->add_option("--in", sc_in, "CCKP instance JSON");
  solve_cckp->add_option("--supply", sc_supply, "supply vector JSON");

  // ---- decompose ----
  auto* dec = app.add_subcommand("decompose", "emit a decomposition");
  std::string d_mode = "weak", d_in;
  double d_eps = 0.5, d_delta = 0.5;
  std::string d_radius = "1";
  dec->add_option("--mode", d_mode, "weak|strong");
  dec->add_option("--epsilon", d_eps, "weak-mode epsilon");
  dec->add_option("--delta", d_delta, "strong-mode delta");
  dec->add_option("--radius", d_radius, "radius guess (rational)");
  dec->add_option("--in", d_in, "instance JSON");

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "gap-instance generators");
  gen->require_subcommand(1);
  int g_k = 3;
  std::string g_in;
  auto* gen_mckc = gen->add_subcommand("mckc-gap", "placement integrality gap");
  gen_mckc->add_option("--k", g_k, "gap parameter");
  auto* gen_conf = gen->add_subcommand("conf-gap", "configuration-LP gap I_K");
  gen_conf->add_option("--k", g_k, "gap parameter");
  auto* gen_bs = gen->add_subcommand("bs-gap", "restricted-assignment gap");
  gen_bs->add_option("--k", g_k, "gap parameter");
  auto* gen_pet = gen->add_subcommand("petersen", "Petersen supply-polyhedron witness");
  gen_pet->add_option("--k", g_k, "machine multiplier");
  auto* gen_embed = gen->add_subcommand("embed-cckp", "embed a CCKP instance into MCKC");
  gen_embed->add_option("--in", g_in, "CCKP instance JSON with a supply block");

  // ---- verify ----
  auto* ver = app.add_subcommand("verify", "validators");
  ver->require_subcommand(1);
  std::string v_in, v_instance, v_supply;
  auto* ver_sol = ver->add_subcommand("solution", "check a solution against its instance");
  ver_sol->add_option("--instance", v_instance, "instance JSON")->required();
  ver_sol->add_option("--in", v_in, "solution JSON")->required();
  auto* ver_far = ver->add_subcommand("farkas", "check a Farkas certificate");
  ver_far->add_option("--instance", v_instance, "CCKP instance JSON")->required();
  ver_far->add_option("--supply", v_supply, "supply JSON")->required();
  ver_far->add_option("--in", v_in, "certificate JSON")->required();
  auto* ver_nb = ver->add_subcommand("neighborhood", "check a complete neighborhood");
  std::string v_radius = "1";
  ver_nb->add_option("--instance", v_instance, "instance JSON")->required();
  ver_nb->add_option("--radius", v_radius, "radius");
  ver_nb->add_option("--in", v_in, "{facilities:[...], clients:[...]}")->required();
  auto* ver_rnd = ver->add_subcommand("roundable", "check the roundable sets of a decomposition");
  std::string v_b = "";
  int v_ahops = -1;
  ver_rnd->add_option("--instance", v_instance, "instance JSON")->required();
  ver_rnd->add_option("--radius", v_radius, "radius the decomposition ran at");
  ver_rnd->add_option("--in", v_in, "strong decomposition JSON (from `decompose --mode strong`)")
      ->required();
  ver_rnd->add_option("--a", v_ahops, "hop diameter bound (default: from delta)");
  ver_rnd->add_option("--b", v_b, "capacity factor (default: 1 + delta)");
  auto* ver_sup = ver->add_subcommand("supply-point", "membership in the assignment polyhedron");
  ver_sup->add_option("--instance", v_instance, "Q||C_min instance JSON")->required();
  ver_sup->add_option("--in", v_in, "supply JSON")->required();

  // ---- oracle ----
  auto* orc = app.add_subcommand("oracle", "guarded brute force");
  orc->require_subcommand(1);
  std::string o_in, o_supply, o_radius = "1", o_b = "1";
  auto* orc_mckc = orc->add_subcommand("mckc", "exhaustive placement search");
  orc_mckc->add_option("--in", o_in, "instance JSON")->required();
  orc_mckc->add_option("--radius", o_radius, "radius");
  orc_mckc->add_option("--b", o_b, "capacity violation bound");
  auto* orc_cckp = orc->add_subcommand("cckp", "exhaustive max-min ratio");
  orc_cckp->add_option("--in", o_in, "CCKP instance JSON")->required();
  orc_cckp->add_option("--supply", o_supply, "supply JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_mckc->parsed()) {
      MckcInstance inst = io::instance_from_json(read_json(sm_in));
      if (auto errs = validate_instance(inst); !errs.empty())
        throw io::ParseError("invalid instance: " + errs.front());
      PipelineConfig cfg;
      cfg.mode = parse_mode(sm_mode);
      cfg.delta = Rat::from_double(sm_delta);
      cfg.backend = parse_backend(sm_backend);
      std::ofstream trace_stream;
      if (!sm_trace.empty()) {
        trace_stream.open(sm_trace);
        cfg.trace = &trace_stream;
      }
      PipelineResult res;
      std::optional<Rat> radius;
      if (!sm_radius.empty()) {
        radius = Rat::parse(sm_radius);
        res = solve_at_radius(inst, *radius, cfg);
      } else {
        GuessResult gr = guess_opt(inst, cfg);
        radius = gr.radius;
        res = std::move(gr.result);
      }
      if (!res.ok()) return report_failure(res);
      json out = io::solution_to_json(inst, *res.solution);
      out["quality"] = io::quality_to_json(res.quality);
      out["hop_budget"] = res.hop_budget;
      out["measured_hops"] = res.solution_max_hops;
      out["cuts"] = res.cuts;
      write_json(sm_out, out);
      return kOk;
    }

    if (solve_cckp->parsed()) {
      CckpInstance inst = io::cckp_from_json(read_json(sc_in));
      SupplyVector supply = io::supply_from_json(read_json(sc_supply));
      std::optional<Allocation> alloc;
      if (sc_backend == "greedy") {
        GreedyOutcome g = greedy_qcmin(inst, supply);
        if (g.certificate) {
          write_json("", io::farkas_to_json(*g.certificate));
          return kInfeasible;
        }
        alloc = g.allocation;
      } else if (sc_backend == "brute") {
        CckpBruteResult b = brute_force_cckp(inst, supply);
        if (b.ratio < Rat(1)) {
          std::cerr << "best ratio " << b.ratio.str() << " < 1\n";
          return kInfeasible;
        }
        alloc = Allocation{b.assignment};
      } else if (sc_backend == "qptas") {
        alloc = qptas_cckp(inst, supply, sc_eps);
        if (!alloc) return kInfeasible;
      } else if (sc_backend == "conf") {
        std::vector<Rat> pt;
        for (auto c : supply.counts) pt.push_back(Rat(c));
        PConfResult sep = p_conf_separation(inst, pt, sc_eps);
        if (!sep.accepted) {
          std::cerr << "supply separated from the configuration polyhedron\n";
          return kInfeasible;
        }
        alloc = conf_lp_round(inst, supply, sep.z, Rat(1) + Rat::from_double(sc_eps));
      } else {
        throw io::ParseError("unknown backend: " + sc_backend);
      }
      write_json("", io::allocation_to_json(*alloc));
      return kOk;
    }

    if (dec->parsed()) {
      MckcInstance inst = io::instance_from_json(read_json(d_in));
      if (auto errs = validate_instance(inst); !errs.empty())
        throw io::ParseError("invalid instance: " + errs.front());
      ThresholdGraph g(inst, Rat::parse(d_radius));
      if (d_mode == "weak") {
        WeakDecomposition w = weak_decompose(g, Rat::from_double(d_eps));
        write_json("", io::weak_decomposition_to_json(inst, w));
        return kOk;
      }
      MckcLp lpm = build_mckc_lp(inst, g.radius());
      lp::LpOutcome out = lp::solve(lpm.sys);
      if (out.status != lp::LpStatus::Feasible) {
        std::cerr << "LP infeasible at this radius\n";
        return kInfeasible;
      }
      FractionalSolution frac = extract_fractional(inst, lpm, out.point, g.radius());
      StrongDecomposition s = strong_decompose(g, frac, Rat::from_double(d_delta));
      write_json("", io::strong_decomposition_to_json(inst, s));
      return kOk;
    }

    if (gen_mckc->parsed()) {
      write_json("", io::mckc_gap_to_json(gen_mckc_gap(g_k)));
      return kOk;
    }
    if (gen_conf->parsed()) {
      write_json("", io::conf_gap_to_json(gen_conf_gap(g_k)));
      return kOk;
    }
    if (gen_bs->parsed()) {
      write_json("", io::bs_gap_to_json(gen_bansal_sviridenko(g_k)));
      return kOk;
    }
    if (gen_pet->parsed()) {
      write_json("", io::petersen_to_json(gen_petersen_pcmin(g_k)));
      return kOk;
    }
    if (gen_embed->parsed()) {
      json j = read_json(g_in);
      CckpInstance inst = io::cckp_from_json(j);
      SupplyVector supply = io::supply_from_json(j.at("supply"));
      write_json("", io::instance_to_json(gen_qcmin_reduction(inst, supply)));
      return kOk;
    }

    if (ver_sol->parsed()) {
      MckcInstance inst = io::instance_from_json(read_json(v_instance));
      json sj = read_json(v_in);
      McKcSolution sol = io::solution_from_json(inst, sj);
      Rat radius = sol.radius_guess;
      QualityReport q = evaluate_solution(inst, sol, radius);
      write_json("", io::quality_to_json(q));
      return kOk;
    }
    if (ver_far->parsed()) {
      CckpInstance inst = io::cckp_from_json(read_json(v_instance));
      SupplyVector supply = io::supply_from_json(read_json(v_supply));
      FarkasCert cert = io::farkas_from_json(read_json(v_in));
      bool ok = verify_farkas(inst, supply, cert);
      std::cout << (ok ? "valid" : "invalid") << "\n";
      return ok ? kOk : kInfeasible;
    }
    if (ver_nb->parsed()) {
      MckcInstance inst = io::instance_from_json(read_json(v_instance));
      ThresholdGraph g(inst, Rat::parse(v_radius));
      json j = read_json(v_in);
      std::map<std::string, int> idx;
      for (int v = 0; v < inst.num_vertices(); ++v)
        idx[v < inst.num_facilities() ? inst.facility_names[v]
                                      : inst.client_names[v - inst.num_facilities()]] = v;
      std::vector<int> T, J;
      for (const auto& f : j.at("facilities")) T.push_back(idx.at(f.get<std::string>()));
      for (const auto& c : j.at("clients")) J.push_back(idx.at(c.get<std::string>()));
      bool ok = verify_complete_neighborhood(g, T, J);
      std::cout << (ok ? "valid" : "invalid") << "\n";
      return ok ? kOk : kInfeasible;
    }
    if (ver_rnd->parsed()) {
      MckcInstance inst = io::instance_from_json(read_json(v_instance));
      ThresholdGraph g(inst, Rat::parse(v_radius));
      StrongDecomposition d = io::strong_decomposition_from_json(inst, read_json(v_in));
      int a_hops = v_ahops >= 0 ? v_ahops : d.params.diam_bound;
      Rat b = v_b.empty() ? Rat(1) + d.delta : Rat::parse(v_b);
      bool all_ok = true;
      for (std::size_t k = 0; k < d.roundable.size(); ++k) {
        RoundableReport rep = verify_roundable(g, d.roundable[k].facilities,
                                               d.roundable[k].opened, d.xhat, d.y_source,
                                               a_hops, b);
        std::cout << "S_" << k << ": diameter " << (rep.diameter_ok ? "ok" : "VIOLATED")
                  << ", condition1 " << (rep.condition1_ok ? "ok" : "VIOLATED")
                  << ", condition2 " << (rep.condition2_ok ? "ok" : "VIOLATED") << "\n";
        all_ok = all_ok && rep.ok();
      }
      if (d.roundable.empty()) std::cout << "no roundable sets\n";
      return all_ok ? kOk : kInfeasible;
    }
    if (ver_sup->parsed()) {
      CckpInstance inst = io::cckp_from_json(read_json(v_instance));
      SupplyVector s = io::supply_from_json(read_json(v_in));
      std::vector<Rat> pt;
      for (auto c : s.counts) pt.push_back(Rat(c));
      PAssResult r = p_ass_membership(inst, pt);
      std::cout << (r.witness ? "member" : "separated") << "\n";
      return r.witness ? kOk : kInfeasible;
    }

    if (orc_mckc->parsed()) {
      MckcInstance inst = io::instance_from_json(read_json(o_in));
      auto sol = brute_force_mckc(inst, Rat::parse(o_radius), Rat::parse(o_b));
      if (!sol) {
        std::cout << "NONE\n";
        return kInfeasible;
      }
      write_json("", io::solution_to_json(inst, *sol));
      return kOk;
    }
    if (orc_cckp->parsed()) {
      CckpInstance inst = io::cckp_from_json(read_json(o_in));
      SupplyVector supply = io::supply_from_json(read_json(o_supply));
      CckpBruteResult b = brute_force_cckp(inst, supply);
      json out = io::allocation_to_json(Allocation{b.assignment});
      out["ratio"] = io::rat_to_json(b.ratio);
      write_json("", out);
      return kOk;
    }
  } catch (const io::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const OracleGuard& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kGuard;
  } catch (const RoundLimit& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return kGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
