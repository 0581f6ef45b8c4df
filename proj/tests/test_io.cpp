#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "mckc/io.hpp"
#include "mckc/oracle.hpp"

using namespace mckc;
using mckc::io::json;

TEST_CASE("rationals to and from JSON") {
  CHECK(io::rat_to_json(Rat(7)) == json(7));
  CHECK(io::rat_to_json(Rat(2, 3)) == json("2/3"));
  CHECK(io::rat_from_json(json(7), "t") == Rat(7));
  CHECK(io::rat_from_json(json("2/3"), "t") == Rat(2, 3));
  CHECK(io::rat_from_json(json(0.5), "t") == Rat(1, 2));
  CHECK_THROWS_AS(io::rat_from_json(json("zebra"), "t"), io::ParseError);
  CHECK(io::dist_from_json(json("inf"), "t").is_infinite());
}

TEST_CASE("instance round-trips through the schema") {
  MckcGap gap = gen_mckc_gap(3);
  json j = io::instance_to_json(gap.instance);
  MckcInstance back = io::instance_from_json(j);
  CHECK(back.facility_names == gap.instance.facility_names);
  CHECK(back.client_names == gap.instance.client_names);
  CHECK(back.soft_capacities == gap.instance.soft_capacities);
  REQUIRE(back.num_types() == gap.instance.num_types());
  for (int p = 0; p < back.num_types(); ++p) {
    CHECK(back.profile[p].count == gap.instance.profile[p].count);
    CHECK(back.profile[p].cap == gap.instance.profile[p].cap);
  }
  for (int a = 0; a < back.num_vertices(); ++a)
    for (int b = 0; b < back.num_vertices(); ++b)
      CHECK(back.distance[a][b] == gap.instance.distance[a][b]);
  CHECK(validate_instance(back).empty());
}

TEST_CASE("edge-list distance input with infinity default") {
  json j;
  j["facilities"] = {"f"};
  j["clients"] = {"a", "b"};
  j["distance"] = {{"edges", json::array({json::array({"f", "a", 1}),
                                          json::array({"f", "b", "3/2"})})},
                   {"infinity_default", true}};
  j["capacities"] = json::array({json{{"count", 1}, {"cap", 2}}});
  MckcInstance inst = io::instance_from_json(j);
  CHECK(inst.dist_fc(0, 0) == Dist(Rat(1)));
  CHECK(inst.dist_fc(0, 1) == Dist(Rat(3, 2)));
  CHECK(inst.distance[1][2].is_infinite());
  CHECK(inst.client_weight == std::vector<Rat>{Rat(1), Rat(1)});
}

TEST_CASE("malformed documents raise ParseError") {
  CHECK_THROWS_AS(io::instance_from_json(json::array()), io::ParseError);
  json j;
  j["facilities"] = {"f"};
  j["clients"] = {"c"};
  CHECK_THROWS_AS(io::instance_from_json(j), io::ParseError);  // no distance
  j["distance"] = json::array({json::array({0})});
  CHECK_THROWS_AS(io::instance_from_json(j), io::ParseError);  // wrong shape
}

TEST_CASE("cckp, supply, solution, farkas round-trips") {
  CckpInstance inst;
  inst.machines = {{Rat(3), 2}, {Rat(5, 2), CckpInstance::kUnbounded}};
  inst.job_types = {Rat(1), Rat(7, 3)};
  CckpInstance back = io::cckp_from_json(io::cckp_to_json(inst));
  CHECK(back.machines[0].demand == Rat(3));
  CHECK(back.machines[0].cardinality == 2);
  CHECK(back.machines[1].cardinality == CckpInstance::kUnbounded);
  CHECK(back.job_types == inst.job_types);

  SupplyVector s{{2, 1}};
  CHECK(io::supply_from_json(io::supply_to_json(s)).counts == s.counts);

  MckcGap gap = gen_mckc_gap(2);
  auto sol = brute_force_mckc(gap.instance, Rat(1), Rat(2));
  REQUIRE(sol.has_value());
  McKcSolution sback = io::solution_from_json(gap.instance,
                                              io::solution_to_json(gap.instance, *sol));
  CHECK(sback.placements == sol->placements);
  CHECK(sback.assignment == sol->assignment);
  CHECK(sback.radius_guess == sol->radius_guess);

  FarkasCert cert;
  cert.alpha = {Rat(4), Rat(1, 3)};
  cert.beta = {Rat(1)};
  FarkasCert cback = io::farkas_from_json(io::farkas_to_json(cert));
  CHECK(cback.alpha == cert.alpha);
  CHECK(cback.beta == cert.beta);
}

TEST_CASE("configuration solutions round-trip") {
  ConfGap gap = gen_conf_gap(2);
  ConfLpSolution back = io::conf_solution_from_json(io::conf_solution_to_json(gap.witness));
  REQUIRE(back.z.size() == gap.witness.z.size());
  for (std::size_t i = 0; i < back.z.size(); ++i) CHECK(back.z[i] == gap.witness.z[i]);
  CHECK(!check_conf_solution(gap.instance, gap.supply, back).has_value());
}

TEST_CASE("decomposition and generator emissions are well-formed JSON") {
  MckcGap gap = gen_mckc_gap(3);
  ThresholdGraph g(gap.instance, Rat(1));
  WeakDecomposition w = weak_decompose(g, Rat(1, 2));
  json wj = io::weak_decomposition_to_json(gap.instance, w);
  CHECK(wj.at("parts").size() == 3);

  StrongDecomposition s = strong_decompose(g, gap.witness, Rat(1, 2));
  json sj = io::strong_decomposition_to_json(gap.instance, s);
  CHECK(sj.at("neighborhoods").size() == 3);

  CHECK(io::mckc_gap_to_json(gap).contains("witness"));
  CHECK(io::petersen_to_json(gen_petersen_pcmin(1)).at("witness").contains("mixture"));
  CHECK(io::conf_gap_to_json(gen_conf_gap(2)).contains("supply"));
  CHECK(io::bs_gap_to_json(gen_bansal_sviridenko(2)).contains("admissible"));
}

TEST_CASE("decompositions round-trip through their JSON forms") {
  MckcGap gap = gen_mckc_gap(3);
  ThresholdGraph g(gap.instance, Rat(1));

  WeakDecomposition w = weak_decompose(g, Rat(1, 2));
  WeakDecomposition wb =
      io::weak_decomposition_from_json(gap.instance, io::weak_decomposition_to_json(gap.instance, w));
  REQUIRE(wb.parts.size() == w.parts.size());
  for (std::size_t l = 0; l < w.parts.size(); ++l) {
    CHECK(wb.parts[l].facilities == w.parts[l].facilities);
    CHECK(wb.parts[l].clients == w.parts[l].clients);
  }
  CHECK(wb.deleted == w.deleted);
  CHECK(wb.epsilon == w.epsilon);

  StrongDecomposition s = strong_decompose(g, gap.witness, Rat(1, 2));
  StrongDecomposition sb = io::strong_decomposition_from_json(
      gap.instance, io::strong_decomposition_to_json(gap.instance, s));
  REQUIRE(sb.neighborhoods.size() == s.neighborhoods.size());
  for (std::size_t l = 0; l < s.neighborhoods.size(); ++l) {
    CHECK(sb.neighborhoods[l].facilities == s.neighborhoods[l].facilities);
    CHECK(sb.neighborhoods[l].clients == s.neighborhoods[l].clients);
  }
  CHECK(sb.c_b == s.c_b);
  CHECK(sb.c_bb == s.c_bb);
  CHECK(sb.c_d == s.c_d);
  CHECK(sb.xhat == s.xhat);
  CHECK(sb.y_source == s.y_source);
  CHECK(sb.delta == s.delta);
  CHECK(sb.params.epsilon == s.params.epsilon);
}
