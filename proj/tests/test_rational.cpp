#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "core/rational.hpp"

using namespace ddgeom;

TEST_CASE("parse_rational accepts integers and fractions") {
  CHECK(parse_rational("0") == Rational(0));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("0/9") == Rational(0));
  CHECK(parse_rational("123456789012345678901234567890/2") ==
        Rational(Integer("61728394506172839450617283945")));
}

TEST_CASE("parse_rational rejects malformed text") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(" 1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1 "), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("3/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("-"), std::invalid_argument);
}

TEST_CASE("rational_to_string writes canonical num/den") {
  CHECK(rational_to_string(Rational(0)) == "0");
  CHECK(rational_to_string(Rational(5)) == "5");
  CHECK(rational_to_string(Rational(-5)) == "-5");
  CHECK(rational_to_string(Rational(3, 4)) == "3/4");
  CHECK(rational_to_string(Rational(-3, 4)) == "-3/4");
  CHECK(rational_to_string(parse_rational("10/4")) == "5/2");
  CHECK(rational_to_double(Rational(1, 2)) == 0.5);
  CHECK(rational_to_double(Rational(-7, 4)) == -1.75);
}

TEST_CASE("format/parse round-trips") {
  const char* samples[] = {"0", "-1", "17/3", "-22/7", "123456789/987654321"};
  for (const char* s : samples) {
    const Rational v = parse_rational(s);
    CHECK(parse_rational(rational_to_string(v)) == v);
  }
}

TEST_CASE("hash_rational agrees on equal values and separates a sample") {
  CHECK(hash_rational(parse_rational("2/4")) == hash_rational(Rational(1, 2)));
  CHECK(hash_rational(Rational(0)) == hash_rational(parse_rational("0/5")));
  CHECK(hash_rational(Rational(1, 2)) != hash_rational(Rational(1, 3)));
  CHECK(hash_rational(Rational(1)) != hash_rational(Rational(-1)));
}

TEST_CASE("hash_combine depends on order") {
  const std::uint64_t a = hash_rational(Rational(1));
  const std::uint64_t b = hash_rational(Rational(2));
  CHECK(hash_combine(a, b) != hash_combine(b, a));
}

TEST_CASE("pow_rational handles integer exponents") {
  CHECK(pow_rational(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(pow_rational(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(pow_rational(Rational(5), 0) == Rational(1));
  CHECK(pow_rational(Rational(0), 0) == Rational(1));
  CHECK(pow_rational(Rational(0), 4) == Rational(0));
  CHECK_THROWS_AS(pow_rational(Rational(0), -1), std::domain_error);
}

TEST_CASE("cmp_pow compares x^p against y^q without rounding") {
  CHECK(cmp_pow(Rational(2), 3, Rational(3), 2) < 0);
  CHECK(cmp_pow(Rational(3), 2, Rational(2), 3) > 0);
  CHECK(cmp_pow(Rational(1, 2), 2, Rational(1, 4), 1) == 0);
  CHECK(cmp_pow(Rational(3, 2), 2, Rational(9, 4), 1) == 0);
  CHECK(cmp_pow(Rational(10), 1, Rational(10), 1) == 0);
  CHECK_THROWS_AS(cmp_pow(Rational(0), 2, Rational(1), 1), std::domain_error);
  CHECK_THROWS_AS(cmp_pow(Rational(2), 2, Rational(-1), 1), std::domain_error);
}

TEST_CASE("cmp_rational_pow compares x against y^e for fractional e") {
  CHECK(cmp_rational_pow(Rational(4), Rational(2), Rational(2)) == 0);
  CHECK(cmp_rational_pow(Rational(3), Rational(2), Rational(3, 2)) > 0);
  CHECK(cmp_rational_pow(Rational(5, 2), Rational(4, 3), Rational(3)) > 0);
  CHECK(cmp_rational_pow(Rational(10), Rational(100), Rational(1, 2)) == 0);
  CHECK(cmp_rational_pow(Rational(9), Rational(100), Rational(1, 2)) < 0);
  CHECK(cmp_rational_pow(Rational(11), Rational(100), Rational(1, 2)) > 0);
  CHECK_THROWS_AS(cmp_rational_pow(Rational(1), Rational(2), Rational(-1)),
                  std::domain_error);
}

TEST_CASE("ceil_pow and floor_pow bracket L^e exactly") {
  CHECK(ceil_pow(Integer(100), Rational(1, 2)) == 10);
  CHECK(floor_pow(Integer(100), Rational(1, 2)) == 10);
  CHECK(ceil_pow(Integer(101), Rational(1, 2)) == 11);
  CHECK(floor_pow(Integer(101), Rational(1, 2)) == 10);
  CHECK(ceil_pow(Integer(625), Rational(1, 4)) == 5);
  CHECK(ceil_pow(Integer(100), Rational(3, 5)) == 16);
  CHECK(floor_pow(Integer(100), Rational(3, 5)) == 15);
  CHECK(ceil_pow(Integer(7), Rational(0)) == 1);
  CHECK(floor_pow(Integer(7), Rational(0)) == 1);
  CHECK(ceil_pow(Integer(5), Rational(2)) == 25);
  CHECK(ceil_pow(Integer(1), Rational(9, 2)) == 1);
  CHECK_THROWS_AS(ceil_pow(Integer(0), Rational(1, 2)), std::domain_error);
  CHECK_THROWS_AS(floor_pow(Integer(2), Rational(-1)), std::domain_error);

  for (long l = 1; l <= 60; ++l) {
    const Integer lo = floor_pow(Integer(l), Rational(5, 7));
    const Integer hi = ceil_pow(Integer(l), Rational(5, 7));
    CHECK(cmp_rational_pow(Rational(lo), Rational(l), Rational(5, 7)) <= 0);
    CHECK(cmp_rational_pow(Rational(hi), Rational(l), Rational(5, 7)) >= 0);
    CHECK(hi - lo <= 1);
  }
}

TEST_CASE("simplest_rational_between pinned values") {
  CHECK(simplest_rational_between(Rational(1, 3), Rational(1, 2)) ==
        Rational(2, 5));
  CHECK(simplest_rational_between(Rational(5, 3), Rational(9, 5)) ==
        Rational(7, 4));
  CHECK(simplest_rational_between(Rational(0), Rational(1)) == Rational(1, 2));
  CHECK(simplest_rational_between(Rational(0), Rational(1, 2)) ==
        Rational(1, 3));
  CHECK(simplest_rational_between(Rational(2), Rational(3)) == Rational(5, 2));
  CHECK(simplest_rational_between(Rational(3), Rational(7)) == Rational(4));
  CHECK(simplest_rational_between(Rational(-5), Rational(-2)) == Rational(-3));
  CHECK(simplest_rational_between(Rational(-1, 2), Rational(-1, 3)) ==
        Rational(-2, 5));
  CHECK(simplest_rational_between(Rational(-1), Rational(1)) == Rational(0));
  CHECK(simplest_rational_between(Rational(-1, 7), Rational(1, 9)) ==
        Rational(0));
}

TEST_CASE("simplest_rational_between stays strictly inside the interval") {
  const Rational los[] = {Rational(1, 7),  Rational(-9, 4), Rational(100, 3),
                          Rational(-2, 3), Rational(41, 7)};
  const Rational his[] = {Rational(2, 7), Rational(-15, 7), Rational(67, 2),
                          Rational(-1, 3), Rational(6)};
  for (int i = 0; i < 5; ++i) {
    const Rational mid = simplest_rational_between(los[i], his[i]);
    CHECK(mid > los[i]);
    CHECK(mid < his[i]);
  }
  CHECK_THROWS_AS(simplest_rational_between(Rational(1), Rational(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(simplest_rational_between(Rational(2), Rational(1)),
                  std::invalid_argument);
}

TEST_CASE("simplest_rational_between minimizes the denominator") {
  // Any rational strictly inside (1/3, 1/2) other than 2/5 has
  // denominator at least 5, so scanning small denominators confirms
  // minimality on a few fixed intervals.
  struct Interval {
    Rational lo, hi;
  };
  const Interval cases[] = {
      {Rational(1, 3), Rational(1, 2)},
      {Rational(5, 3), Rational(9, 5)},
      {Rational(-7, 5), Rational(-4, 3)},
      {Rational(13, 9), Rational(31, 21)},
  };
  for (const auto& c : cases) {
    const Rational got = simplest_rational_between(c.lo, c.hi);
    bool found_simpler = false;
    for (long den = 1; den < mpz_get_si(got.get_den().get_mpz_t()); ++den) {
      Integer num_lo;
      mpz_fdiv_q(num_lo.get_mpz_t(), Integer(c.lo.get_num() * den).get_mpz_t(),
                 c.lo.get_den().get_mpz_t());
      for (Integer num = num_lo; num <= num_lo + den + 2; ++num) {
        Rational cand(num, den);
        cand.canonicalize();
        if (cand > c.lo && cand < c.hi) found_simpler = true;
      }
    }
    CHECK_FALSE(found_simpler);
  }
}

TEST_CASE("floor_log2 matches the bit length minus one") {
  CHECK(floor_log2(Integer(1)) == 0);
  CHECK(floor_log2(Integer(2)) == 1);
  CHECK(floor_log2(Integer(3)) == 1);
  CHECK(floor_log2(Integer(4)) == 2);
  CHECK(floor_log2(Integer(625)) == 9);
  CHECK(floor_log2(Integer(1023)) == 9);
  CHECK(floor_log2(Integer(1024)) == 10);
  CHECK_THROWS_AS(floor_log2(Integer(0)), std::domain_error);
}
