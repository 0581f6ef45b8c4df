#include <doctest.h>

#include "mckc/rational.hpp"

using namespace mckc;

TEST_CASE("rational arithmetic and normalization") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 3) * Rat(3, 5) == Rat(1, 5));
  CHECK(Rat(7, 2) / Rat(7) == Rat(1, 2));
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-5, 3).floor() == -2);
  CHECK(Rat(-5, 3).ceil() == -1);
  CHECK(Rat(5, 3).floor() == 1);
  CHECK(Rat(5, 3).ceil() == 2);
  CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
}

TEST_CASE("rational parsing and printing round-trips") {
  CHECK(Rat::parse("7").str() == "7");
  CHECK(Rat::parse("-7/3").str() == "-7/3");
  CHECK(Rat::parse(Rat(22, 7).str()) == Rat(22, 7));
  CHECK_THROWS_AS(Rat::parse("1/2x"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("zebra"), std::invalid_argument);
}

TEST_CASE("from_double snaps to small denominators") {
  CHECK(Rat::from_double(0.5) == Rat(1, 2));
  CHECK(Rat::from_double(2.0 / 3.0) == Rat(2, 3));
  CHECK(Rat::from_double(1.0 - 1.0 / 3.0) == Rat(2, 3));
  CHECK(Rat::from_double(0.0) == Rat(0));
  CHECK(Rat::from_double(5) == Rat(5));
}

TEST_CASE("overflow is an error, never a wrong answer") {
  Rat big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * Rat(8), std::overflow_error);
}

TEST_CASE("distances order with the infinity sentinel") {
  Dist inf = Dist::infinity();
  CHECK(Dist(Rat(5)) < inf);
  CHECK(!(inf < Dist(Rat(5))));
  CHECK(inf == Dist::infinity());
  CHECK(inf.str() == "inf");
}
