#include <doctest.h>

#include <functional>
#include <random>

#include "helpers.hpp"
#include "mckc/oracle.hpp"
#include "mckc/strong_decomp.hpp"
#include "mckc/supply.hpp"

using namespace mckc;

namespace {

std::vector<Rat> as_point(const SupplyVector& s) {
  std::vector<Rat> pt;
  for (auto c : s.counts) pt.push_back(Rat(c));
  return pt;
}

}  // namespace

TEST_CASE("p_ass membership basics") {
  CckpInstance inst;
  inst.machines = {{Rat(4), CckpInstance::kUnbounded}};
  inst.job_types = {Rat(4)};
  SUBCASE("a single exact job is a member") {
    PAssResult r = p_ass_membership(inst, {Rat(1)});
    REQUIRE(r.witness.has_value());
    CHECK((*r.witness)[0][0] == Rat(1));
  }
  SUBCASE("demand 10 against one 4 separates with alpha=(4), beta=(1)") {
    inst.machines[0].demand = Rat(10);
    PAssResult r = p_ass_membership(inst, {Rat(1)});
    REQUIRE(r.hyperplane.has_value());
    CHECK(r.hyperplane->beta == std::vector<Rat>{Rat(1)});
    CHECK(r.hyperplane->alpha == std::vector<Rat>{Rat(4)});
    CHECK(r.hyperplane->violated_by({Rat(1)}));
  }
}

TEST_CASE("p_ass hyperplanes reject the query, admit every feasible integral supply") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> val(1, 8);
  int separated = 0;
  for (int trial = 0; trial < 60; ++trial) {
    CckpInstance inst;
    const int m = 1 + int(rng() % 3);
    for (int i = 0; i < m; ++i) inst.machines.push_back({Rat(val(rng)), CckpInstance::kUnbounded});
    const int T = 1 + int(rng() % 3);
    for (int t = 0; t < T; ++t) inst.job_types.push_back(Rat(val(rng)));
    SupplyVector s;
    for (int t = 0; t < T; ++t) s.counts.push_back(std::int64_t(rng() % 3));
    PAssResult r = p_ass_membership(inst, as_point(s));
    if (!r.hyperplane) continue;
    ++separated;
    CHECK(r.hyperplane->violated_by(as_point(s)));
    // enumerate small integral supplies; feasible ones satisfy the plane
    std::vector<std::int64_t> probe(T, 0);
    std::function<void(int)> enumerate = [&](int t) {
      if (t == T) {
        SupplyVector q{probe};
        if (q.total() > 8) return;
        CckpBruteResult br = brute_force_cckp(inst, q);
        if (br.ratio >= Rat(1)) CHECK(!r.hyperplane->violated_by(as_point(q)));
        return;
      }
      for (probe[t] = 0; probe[t] <= 4; ++probe[t]) enumerate(t + 1);
      probe[t] = 0;
    };
    if (m <= 5) enumerate(0);
  }
  CHECK(separated > 5);
}

TEST_CASE("p_ass accepted points round to half demands via greedy") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> val(1, 8);
  int accepted = 0;
  for (int trial = 0; trial < 100; ++trial) {
    CckpInstance inst;
    const int m = 1 + int(rng() % 3);
    for (int i = 0; i < m; ++i) inst.machines.push_back({Rat(val(rng)), CckpInstance::kUnbounded});
    const int T = 1 + int(rng() % 3);
    for (int t = 0; t < T; ++t) inst.job_types.push_back(Rat(val(rng)));
    SupplyVector s;
    for (int t = 0; t < T; ++t) s.counts.push_back(std::int64_t(rng() % 4));
    PAssResult r = p_ass_membership(inst, as_point(s));
    if (!r.witness) continue;
    ++accepted;
    GreedyOutcome g = greedy_qcmin(inst, s);
    REQUIRE(g.allocation.has_value());
    for (int i = 0; i < m; ++i)
      CHECK(g.allocation->received(inst, i) >= inst.machines[i].demand / Rat(2));
  }
  CHECK(accepted > 20);
}

TEST_CASE("knapsack with cardinality: worked examples") {
  SUBCASE("f = 1 takes the best single item under budget") {
    auto cfg = max_knapsack_cardinality({Rat(1), Rat(3)}, {Rat(5), Rat(9)}, {5, 5}, 1, Rat(2));
    REQUIRE(cfg.has_value());
    CHECK(*cfg == Config{{0, 1}});  // item 1 is over budget
  }
  SUBCASE("zero budget admits nothing") {
    auto cfg = max_knapsack_cardinality({Rat(1)}, {Rat(5)}, {5}, 3, Rat(0));
    CHECK(!cfg.has_value());
  }
  SUBCASE("free items fill the cardinality") {
    auto cfg = max_knapsack_cardinality({Rat(0)}, {Rat(5)}, {10}, 3, Rat(1));
    REQUIRE(cfg.has_value());
    CHECK(config_size(*cfg) == 3);
  }
}

TEST_CASE("knapsack agrees with exhaustive search on random 8-item instances") {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> val(0, 4000), w(1, 9);
  for (int trial = 0; trial < 200; ++trial) {
    const int T = 1 + int(rng() % 4);
    std::vector<Rat> alpha, weight;
    std::vector<std::int64_t> copies;
    int total = 0;
    for (int t = 0; t < T && total < 8; ++t) {
      // alphas are multiples of budget/10^4, so the grid is exact
      alpha.push_back(Rat(val(rng), 10000));
      weight.push_back(Rat(w(rng)));
      int c = 1 + int(rng() % (8 - total));
      copies.push_back(c);
      total += c;
    }
    std::int64_t f = 1 + std::int64_t(rng() % 6);
    Rat budget(1);

    auto got = max_knapsack_cardinality(alpha, weight, copies, f, budget);

    // exhaustive oracle over copy subsets
    std::vector<int> items;
    for (int t = 0; t < int(copies.size()); ++t)
      for (int c = 0; c < copies[t]; ++c) items.push_back(t);
    Rat best(-1);
    const int N = int(items.size());
    for (int mask = 0; mask < (1 << N); ++mask) {
      if (__builtin_popcount(mask) > f) continue;
      Rat a(0), ww(0);
      for (int q = 0; q < N; ++q)
        if (mask & (1 << q)) {
          a += alpha[items[q]];
          ww += weight[items[q]];
        }
      if (a < budget && ww > best) best = ww;
    }
    if (best < Rat(0)) {
      CHECK(!got.has_value());
    } else {
      REQUIRE(got.has_value());
      Rat gw(0), ga(0);
      for (auto [t, n] : *got) {
        gw += Rat(n) * weight[t];
        ga += Rat(n) * alpha[t];
      }
      CHECK(gw == best);
      CHECK(ga < budget);
      CHECK(config_size(*got) <= f);
    }
  }
}

TEST_CASE("p_conf separation basics") {
  CckpInstance inst;
  inst.machines = {{Rat(4), 1}};
  inst.job_types = {Rat(4), Rat(1)};
  SUBCASE("one exact job: accepted") {
    PConfResult r = p_conf_separation(inst, {Rat(1), Rat(0)}, 0.1);
    CHECK(r.accepted);
    CHECK(!check_conf_solution(inst, SupplyVector{{1, 0}}, r.z, Rat(11, 10)).has_value());
  }
  SUBCASE("four small jobs cannot pass a unit cardinality") {
    PConfResult r = p_conf_separation(inst, {Rat(0), Rat(4)}, 0.5);
    REQUIRE(!r.accepted);
    CHECK(r.hyperplane.violated_by({Rat(0), Rat(4)}));
  }
  SUBCASE("empty polyhedron separates everything") {
    CckpInstance impossible;
    impossible.machines = {{Rat(100), 1}};
    impossible.job_types = {Rat(1)};
    PConfResult r = p_conf_separation(impossible, {Rat(50)}, 0.1);
    REQUIRE(!r.accepted);
    CHECK(r.hyperplane.machine_side() > r.hyperplane.job_side({Rat(50)}));
  }
}

TEST_CASE("p_conf hyperplanes admit every feasible integral supply at desk scale") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> val(1, 8);
  int separated = 0;
  for (int trial = 0; trial < 40; ++trial) {
    CckpInstance inst;
    const int m = 1 + int(rng() % 3);
    for (int i = 0; i < m; ++i) inst.machines.push_back({Rat(val(rng)), 1 + std::int64_t(rng() % 3)});
    const int T = 1 + int(rng() % 3);
    for (int t = 0; t < T; ++t) inst.job_types.push_back(Rat(val(rng)));
    SupplyVector s;
    for (int t = 0; t < T; ++t) s.counts.push_back(std::int64_t(rng() % 3));
    PConfResult r = p_conf_separation(inst, as_point(s), 0.05);
    if (r.accepted) continue;
    ++separated;
    CHECK(r.hyperplane.violated_by(as_point(s)));
    std::vector<std::int64_t> probe(T, 0);
    std::function<void(int)> enumerate = [&](int t) {
      if (t == T) {
        SupplyVector q{probe};
        if (q.total() > 8) return;
        CckpBruteResult br = brute_force_cckp(inst, q);
        if (br.ratio >= Rat(1)) CHECK(!r.hyperplane.violated_by(as_point(q)));
        return;
      }
      for (probe[t] = 0; probe[t] <= 4; ++probe[t]) enumerate(t + 1);
      probe[t] = 0;
    };
    enumerate(0);
  }
  CHECK(separated > 5);
}

TEST_CASE("suffix domination and witness shifts") {
  CckpInstance inst;
  inst.machines = {{Rat(3), CckpInstance::kUnbounded}};
  inst.job_types = {Rat(1), Rat(2), Rat(3)};  // ascending
  SUBCASE("domination is checked over capacity order") {
    CHECK(suffix_dominates(inst, {Rat(0), Rat(0), Rat(2)}, {Rat(1), Rat(1), Rat(0)}));
    CHECK(!suffix_dominates(inst, {Rat(5), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1)}));
  }
  SUBCASE("t = s keeps the witness") {
    AssignmentPoint z = {{Rat(1), Rat(1), Rat(0)}};
    auto z2 = shift_witness_ass(inst, z, {Rat(1), Rat(1), Rat(0)}, {Rat(1), Rat(1), Rat(0)});
    CHECK(z2 == z);
  }
  SUBCASE("one-copy upward move carries the mass along") {
    AssignmentPoint z = {{Rat(1), Rat(0), Rat(0)}};
    auto z2 = shift_witness_ass(inst, z, {Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)});
    CHECK(z2[0][0] == Rat(0));
    CHECK(z2[0][1] == Rat(1));
  }
}

TEST_CASE("random dominating shifts revalidate exactly") {
  std::mt19937_64 rng(808);
  std::uniform_int_distribution<int> val(1, 6);
  int checked_ass = 0, checked_conf = 0;
  for (int trial = 0; trial < 200 && (checked_ass < 100 || checked_conf < 100); ++trial) {
    CckpInstance inst;
    const int m = 1 + int(rng() % 2);
    for (int i = 0; i < m; ++i) inst.machines.push_back({Rat(val(rng)), CckpInstance::kUnbounded});
    const int T = 4;
    for (int t = 0; t < T; ++t) inst.job_types.push_back(Rat(t + 1));
    SupplyVector s;
    for (int t = 0; t < T; ++t) s.counts.push_back(std::int64_t(rng() % 3) + 1);

    // a random dominating integer target: push some copies upward, add spare
    std::vector<Rat> sv = as_point(s), tv = sv;
    for (int t = 0; t + 1 < T; ++t) {
      if (tv[t] > Rat(0) && rng() % 2) {
        tv[t] -= Rat(1);
        tv[t + 1] += Rat(1);
      }
    }
    // unconditional spare at the top absorbs snapping dust from the LP
    tv[T - 1] += Rat(1) + Rat(rng() % 2);
    REQUIRE(suffix_dominates(inst, tv, sv));

    // assignment polyhedron
    PAssResult pa = p_ass_membership(inst, sv);
    if (pa.witness) {
      AssignmentPoint shifted = shift_witness_ass(inst, *pa.witness, sv, tv);
      // (A1) against t exactly
      for (int t = 0; t < T; ++t) {
        Rat usage(0);
        for (int i = 0; i < m; ++i) usage += shifted[i][t];
        CHECK(usage <= tv[t]);
      }
      // (A2) never drops below the input's margin
      for (int i = 0; i < m; ++i) {
        Rat before(0), after(0);
        for (int t = 0; t < T; ++t) {
          before += (*pa.witness)[i][t] * min(inst.job_types[t], inst.machines[i].demand);
          after += shifted[i][t] * min(inst.job_types[t], inst.machines[i].demand);
        }
        CHECK(after >= before);
      }
      ++checked_ass;
    }

    // configuration polyhedron (with finite cardinalities)
    CckpInstance cckp = inst;
    for (auto& mc : cckp.machines) mc.cardinality = 3;
    PConfResult pc = p_conf_separation(cckp, sv, 0.25);
    if (pc.accepted) {
      ConfLpSolution shifted = shift_witness_conf(cckp, pc.z, sv, tv);
      // (C1) rows still sum to one, (C3) support still feasible
      for (int i = 0; i < m; ++i) {
        Rat row(0);
        for (const auto& [cfg, mass] : shifted.z[i]) {
          row += mass;
          CHECK(config_size(cfg) <= cckp.machines[i].cardinality);
          CHECK(config_capacity(cckp, cfg) * Rat(5, 4) >= cckp.machines[i].demand);
        }
        CHECK(row == Rat(1));
      }
      // (C2) against the shifted supply, exactly
      for (int t = 0; t < T; ++t) {
        Rat usage(0);
        for (int i = 0; i < m; ++i)
          for (const auto& [cfg, mass] : shifted.z[i]) usage += mass * Rat(config_count(cfg, t));
        CHECK(usage <= tv[t]);
      }
      ++checked_conf;
    }
  }
  CHECK(checked_ass >= 100);
  CHECK(checked_conf >= 100);
}

TEST_CASE("implied membership: LP aggregates are assignment-polyhedron witnesses") {
  // for any (x,y) feasible for (L1)-(L6) and any complete-neighborhood
  // family, z_{l,p} = sum_{i in T_l} y_{ip} satisfies (A1)-(A2) with
  // s_p = y^T_p and D_l = sum of responsible client weights
  std::mt19937_64 rng(5150);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 15; ++trial) {
    MckcInstance inst = testing::random_instance(rng, 2 + int(rng() % 5), 2 + int(rng() % 10),
                                                 1 + int(rng() % 3), true);
    auto frac = testing::lp_fractional(inst, Rat(1));
    if (!frac) continue;
    ThresholdGraph g(inst, Rat(1));
    StrongDecomposition d = strong_decompose(g, *frac, Rat(1, 2));
    if (d.neighborhoods.empty()) continue;
    ++checked;
    const int P = inst.num_types();
    std::vector<Rat> yT(P, Rat(0));
    for (const auto& part : d.neighborhoods)
      for (int i : part.facilities)
        for (int p = 0; p < P; ++p) yT[p] += frac->y[i][p];
    // (A1): per type, sum over parts of z_{l,p} equals y^T exactly
    // (A2): per part, sum_p z_{l,p} min(c_p, D_l) >= D_l (within snap dust)
    std::vector<Rat> usage(P, Rat(0));
    for (const auto& part : d.neighborhoods) {
      Rat demand(0);
      for (int v : part.clients) demand += inst.client_weight[v - inst.num_facilities()];
      Rat got(0);
      for (int p = 0; p < P; ++p) {
        Rat zlp(0);
        for (int i : part.facilities) zlp += frac->y[i][p];
        usage[p] += zlp;
        got += zlp * min(inst.profile[p].cap, demand);
      }
      CHECK(got >= demand - Rat(1, 1000));
    }
    for (int p = 0; p < P; ++p) CHECK(usage[p] <= yT[p]);
  }
  CHECK(checked >= 15);
}
