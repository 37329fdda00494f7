#include "qmlkit/angle.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace qmlkit;

namespace {

Angle A(const char* s) { return Angle::parse(s); }

// multiplicative order of 2 modulo an odd q, by brute force
int order_of_two(long long q) {
  long long x = 2 % q;
  int k = 1;
  while (x != 1 % q) {
    x = x * 2 % q;
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("angles are reduced and compared by value") {
  CHECK(Angle(2, 4) == Angle(1, 2));
  CHECK(Angle(3, 2) == Angle(1, 2));
  CHECK(Angle(-1, 3) == Angle(2, 3));
  CHECK(A("4/14").str() == "2/7");
  CHECK(A("0.(001)") == A("1/7"));
  CHECK(A("0.1(0)") == A("1/2"));
  CHECK_THROWS_AS(A("1/0"), parse_error);
  CHECK_THROWS_AS(A("x/3"), parse_error);
}

TEST_CASE("doubling") {
  CHECK(double_angle(A("5/6")) == A("2/3"));
  CHECK(double_angle(A("0")) == A("0"));
  CHECK(double_angle(A("1/7")) == A("2/7"));
  auto [p, q] = halves(A("2/3"));
  CHECK(p == A("1/3"));
  CHECK(q == A("5/6"));
}

TEST_CASE("orbit classification") {
  auto c = orbit_classification(A("1/7"));
  CHECK(c.preperiod == 0);
  CHECK(c.period == 3);
  c = orbit_classification(A("1/12"));
  CHECK(c.preperiod == 2);
  CHECK(c.period == 2);
  REQUIRE(c.orbit.size() == 4);
  CHECK(c.orbit[1] == A("1/6"));
  CHECK(c.orbit[3] == A("2/3"));
  c = orbit_classification(A("0"));
  CHECK(c.preperiod == 0);
  CHECK(c.period == 1);
  CHECK(period_of(A("37/127")) == 7);
  CHECK_THROWS_AS(period_of(A("1/12")), domain_error);
}

TEST_CASE("binary expansions") {
  auto e = binary_expansion(A("1/7"));
  CHECK(e.preperiod == "");
  CHECK(e.period == "001");
  e = binary_expansion(A("1/2"));
  CHECK(e.preperiod == "1");
  CHECK(e.period == "0");
  CHECK(binary_expansion(A("2/7")).period == "010");
}

TEST_CASE("property: binary expansion round trip") {
  for (long long q = 1; q <= 200; ++q)
    for (long long p = 0; p < q; ++p) {
      const Angle a(p, q);
      const auto e = binary_expansion(a);
      REQUIRE(angle_from_binary(e.preperiod, e.period) == a);
    }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> den(2, 1000000);
  for (int i = 0; i < 300; ++i) {
    const long long q = den(rng);
    const Angle a(std::uniform_int_distribution<long long>(0, q - 1)(rng), q);
    const auto e = binary_expansion(a);
    REQUIRE(angle_from_binary(e.preperiod, e.period) == a);
  }
}

TEST_CASE("property: period of an odd denominator is the order of 2") {
  for (long long q = 3; q <= 301; q += 2)
    for (long long p : {1LL, q - 1, q / 2})
      if (std::gcd(p, q) == 1) REQUIRE(period_of(Angle(p, q)) == order_of_two(q));
}

TEST_CASE("property: doubling never lengthens the orbit") {
  for (long long q = 1; q <= 120; ++q)
    for (long long p = 0; p < q; ++p) {
      const auto c0 = orbit_classification(Angle(p, q));
      const auto c1 = orbit_classification(double_angle(Angle(p, q)));
      REQUIRE(c1.preperiod + c1.period <= c0.preperiod + c0.period);
      REQUIRE(c1.period == c0.period);
    }
}

TEST_CASE("inverse branches") {
  CHECK(inverse_branch(A("1/3"), 0, "0", A("0")) == A("1/2"));
  CHECK(inverse_branch(A("1/3"), 1, "0", A("0")) == A("1/2"));
  CHECK(inverse_branch(A("1/3"), 0, "0", A("1/3")) == A("2/3"));
  CHECK(inverse_branch(A("1/3"), 1, "0", A("1/3")) == A("1/6"));
  Branches br(A("1/7"));
  CHECK(br.adot() == A("4/7"));
  CHECK(br.addot() == A("1/14"));
  CHECK(br.lower() == A("1/14"));
  CHECK(br.upper() == A("4/7"));
  CHECK(br.symbol_of(A("1/7")) == 0);
  CHECK(br.symbol_of(A("0")) == 1);
  CHECK(br.symbol_of(A("1/14")) == -1);
}

TEST_CASE("property: one branch step followed by doubling is the identity") {
  for (const char* alpha : {"1/3", "1/7", "2/7", "3/7", "1/15", "37/127"}) {
    Branches br(A(alpha));
    for (long long q = 1; q <= 60; ++q)
      for (long long p = 0; p < q; ++p)
        for (char s : {'0', '1'})
          for (int t : {0, 1}) REQUIRE(double_angle(br.step(s, t, Angle(p, q))) == Angle(p, q));
  }
}

TEST_CASE("chord relations") {
  const Chord c1(A("1/7"), A("2/7"));
  CHECK(chord_relations(c1, Chord(A("2/7"), A("5/7")), A("3/14")).point_behind);
  CHECK(chord_relations(Chord(A("1/7"), A("4/7")), Chord(A("2/7"), A("5/7")), A("0")).crosses);
  CHECK(chord_nested_in(c1, Chord(A("1/14"), A("3/7"))));
  CHECK_FALSE(chord_nested_in(c1, Chord(A("1/14"), A("9/14"))));
  CHECK_FALSE(chords_cross(c1, Chord(A("2/7"), A("4/7"))));
  CHECK_THROWS_AS(point_behind(Chord(A("0"), A("1/2")), A("1/4")), domain_error);
}

TEST_CASE("arc predicates") {
  CHECK(arc_length(A("3/4"), A("1/4")) == Rational(1, 2));
  CHECK(in_open_arc(A("0"), A("3/4"), A("1/4")));
  CHECK_FALSE(in_open_arc(A("3/4"), A("3/4"), A("1/4")));
  CHECK(in_open_arc(A("1/2"), A("1/3"), A("1/3")));
  CHECK(chord_length(A("1/8"), A("7/8")) == Rational(1, 4));
}
