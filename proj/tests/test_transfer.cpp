#include <doctest.h>

#include <random>

#include "mckc/pipeline.hpp"

using namespace mckc;

TEST_CASE("the floor formula on the worked examples") {
  SUBCASE("y = (0.6, 0.7): one slot lands on the small type") {
    TransferResult tr = transfer_capacities({Rat(1), Rat(2)}, {0, 0},
                                            {Rat(3, 5), Rat(7, 10)}, {1, 1});
    CHECK(tr.s_tilde == std::vector<std::int64_t>{1, 0});
  }
  SUBCASE("integral masses transfer as themselves") {
    TransferResult tr = transfer_capacities({Rat(1), Rat(2)}, {1, 2}, {Rat(1), Rat(2)}, {2, 2});
    CHECK(tr.s_tilde == std::vector<std::int64_t>{1, 2});
    CHECK(tr.t_residual == std::vector<std::int64_t>{1, 0});
  }
  SUBCASE("k = (1,1), y = (0.5, 0.9)") {
    TransferResult tr =
        transfer_capacities({Rat(1), Rat(2)}, {0, 0}, {Rat(1, 2), Rat(9, 10)}, {1, 1});
    CHECK(tr.s_tilde == std::vector<std::int64_t>{1, 0});
    CHECK(tr.t_residual == std::vector<std::int64_t>{0, 1});
  }
}

TEST_CASE("precondition violations are decomposition bugs") {
  // suffix of s exceeds the floor of the suffix of y
  CHECK_THROWS_AS(transfer_capacities({Rat(1)}, {1}, {Rat(1, 2)}, {3}), std::logic_error);
  // s~ lands above k when y_p > k_p
  CHECK_THROWS_AS(transfer_capacities({Rat(1)}, {0}, {Rat(2)}, {1}), std::logic_error);
}

TEST_CASE("mass movement property: 1000 random triples, exact arithmetic") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 1000; ++trial) {
    const int P = 1 + int(rng() % 5);
    std::vector<Rat> values, y;
    std::vector<std::int64_t> k, s;
    for (int p = 0; p < P; ++p) values.push_back(Rat(p + 1));
    // k first, then y with y_p <= k_p (claim (b) needs it), then slots s
    // by sprinkling below the suffix floors
    for (int p = 0; p < P; ++p) k.push_back(std::int64_t(rng() % 4));
    for (int p = 0; p < P; ++p) {
      Rat cap(k[p]);
      Rat v = Rat(std::int64_t(rng() % 9), 4);  // quarters in [0, 2]
      y.push_back(min(v, cap));
    }
    s.assign(P, 0);
    {
      Rat suffix(0);
      std::int64_t used = 0;
      for (int p = P - 1; p >= 0; --p) {
        suffix += y[p];
        std::int64_t room = suffix.floor() - used;
        std::int64_t take = room > 0 ? std::int64_t(rng() % (room + 1)) : 0;
        s[p] = take;
        used += take;
      }
    }

    TransferResult tr = transfer_capacities(values, s, y, k);
    Rat ysuf(0);
    std::int64_t ssuf = 0, stsuf = 0;
    for (int p = P - 1; p >= 0; --p) {
      ysuf += y[p];
      ssuf += s[p];
      stsuf += tr.s_tilde[p];
      CHECK(tr.s_tilde[p] <= k[p]);                    // (b)
      CHECK(ssuf <= stsuf);                            // (a), left inequality
      CHECK(stsuf <= ysuf.ceil());                     // (a), right inequality
      CHECK(stsuf == ysuf.floor());                    // the formula's identity
      CHECK(tr.t_residual[p] == k[p] - tr.s_tilde[p]);
      CHECK(tr.t_residual[p] >= 0);
    }
    // upgrade: every slot got an entry of at least its own value
    std::size_t q = 0;
    std::vector<std::int64_t> used(P, 0);
    for (int p = P - 1; p >= 0; --p)
      for (std::int64_t c = 0; c < s[p]; ++c, ++q) {
        REQUIRE(q < tr.upgrade.size());
        CHECK(tr.upgrade[q] >= p);
        ++used[tr.upgrade[q]];
      }
    for (int p = 0; p < P; ++p) CHECK(used[p] <= tr.s_tilde[p]);
  }
}
