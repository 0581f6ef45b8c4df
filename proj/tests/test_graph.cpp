#include <doctest.h>

#include "mckc/gaps.hpp"
#include "mckc/graph.hpp"

using namespace mckc;

namespace {

MckcInstance star3() {
  MckcInstance inst;
  inst.facility_names = {"f"};
  inst.client_names = {"c0", "c1", "c2"};
  int n = 4;
  inst.distance.assign(n, std::vector<Dist>(n, Dist(Rat(2))));
  for (int a = 0; a < n; ++a) inst.distance[a][a] = Dist(Rat(0));
  for (int c = 1; c < n; ++c) inst.distance[0][c] = inst.distance[c][0] = Dist(Rat(1));
  inst.client_weight.assign(3, Rat(1));
  inst.profile = {{1, Rat(3)}};
  return inst;
}

// path c1 - f1 - c2 - f2 realized with distances 1 along the path
MckcInstance path4() {
  MckcInstance inst;
  inst.facility_names = {"f1", "f2"};
  inst.client_names = {"c1", "c2"};
  // vertex order: f1=0, f2=1, c1=2, c2=3; path edges: (c1,f1), (f1,c2), (c2,f2)
  int n = 4;
  auto D = [&](int hops) { return Dist(Rat(hops)); };
  inst.distance.assign(n, std::vector<Dist>(n, Dist::infinity()));
  std::vector<std::vector<int>> hops = {
      {0, 2, 1, 1},
      {2, 0, 3, 1},
      {1, 3, 0, 2},
      {1, 1, 2, 0},
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) inst.distance[a][b] = D(hops[a][b]);
  inst.client_weight.assign(2, Rat(1));
  inst.profile = {{2, Rat(2)}};
  return inst;
}

}  // namespace

TEST_CASE("threshold graph edge counts on the star") {
  MckcInstance inst = star3();
  CHECK(ThresholdGraph(inst, Rat(1)).neighbors_g(0).size() == 3);
  CHECK(ThresholdGraph(inst, Rat(1, 2)).neighbors_g(0).empty());
}

TEST_CASE("gap instance at radius 1 splits into complete bipartite groups") {
  MckcGap gap = gen_mckc_gap(3);
  ThresholdGraph g(gap.instance, Rat(1));
  for (int i = 0; i < gap.instance.num_facilities(); ++i)
    CHECK(g.neighbors_g(i).size() == 3);  // each facility sees its 3 group clients
  for (int j = 0; j < gap.instance.num_clients(); ++j)
    CHECK(g.neighbors_g(gap.instance.client_vertex(j)).size() == 2);
  // no cross-group pair is connected
  CHECK(g.hop_diameter_g({0, 2}) == -1);
}

TEST_CASE("layered neighborhoods with client parity") {
  MckcInstance inst = star3();
  ThresholdGraph g(inst, Rat(1));
  int c0 = inst.client_vertex(0);
  auto l1 = g.layered_neighborhood(c0, 1);
  CHECK(l1.inside == std::vector<int>{c0});
  CHECK(l1.frontier == std::vector<int>{0});
  auto l2 = g.layered_neighborhood(c0, 2);
  CHECK(l2.inside.size() == 2);  // c0 and f
  CHECK(l2.frontier.size() == 2);  // the other two clients
  for (int v : l2.frontier) CHECK(g.is_client(v));
}

TEST_CASE("layered neighborhood on the path, t = 3") {
  MckcInstance inst = path4();
  ThresholdGraph g(inst, Rat(1));
  int c1 = 2;
  auto l3 = g.layered_neighborhood(c1, 3);
  CHECK(l3.inside.size() == 3);   // c1, f1, c2
  REQUIRE(l3.frontier.size() == 1);
  CHECK(l3.frontier[0] == 1);     // f2
}

TEST_CASE("hop diameters") {
  MckcInstance inst = star3();
  ThresholdGraph g(inst, Rat(1));
  CHECK(g.hop_diameter_g({0}) == 0);
  // two clients sharing a facility are two hops apart
  CHECK(g.hop_diameter_g({inst.client_vertex(0), inst.client_vertex(1)}) == 2);
  CHECK_THROWS_AS(g.hop_diameter_g({}), std::invalid_argument);
}

TEST_CASE("deletion mask shrinks neighborhoods but never grows them") {
  MckcInstance inst = star3();
  ThresholdGraph g(inst, Rat(1));
  int c0 = inst.client_vertex(0);
  CHECK(g.neighbors_h(c0).size() == 1);
  g.remove(0);
  CHECK(g.neighbors_h(c0).empty());
  CHECK(g.neighbors_g(c0).size() == 1);  // G unchanged
  CHECK_THROWS_AS(g.layered_neighborhood(0, 1), std::invalid_argument);
}
