#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "padic/errors.hpp"
#include "padic/padic_number.hpp"

using namespace padic;

TEST_CASE("valuations of known rationals") {
  CHECK(PadicNumber(mpq_class(3, 8), 2).valuation() == Valuation(-3));
  CHECK(PadicNumber(96, 2).valuation() == Valuation(5));
  CHECK(PadicNumber(96, 3).valuation() == Valuation(1));
  CHECK(PadicNumber(mpq_class(5, 7), 5).valuation() == Valuation(1));
  CHECK(PadicNumber(0, 2).valuation().is_infinite());
  CHECK(PadicNumber(0, 2).abs().is_zero());
  CHECK(PadicNumber(20, 2).abs() == AbsValue::from_exponent(-2));
  CHECK(AbsValue::from_exponent(-2).to_string(2) == "2^-2");
}

TEST_CASE("parsing and formatting") {
  CHECK(parse_rational("-6/4") == mpq_class(-3, 2));
  CHECK(parse_rational("17") == mpq_class(17));
  CHECK(format_rational(mpq_class(9, 4)) == "9/4");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK_THROWS_AS(PadicNumber(1, 4), Error);
  CHECK(ProjectivePoint::parse("inf", 2).is_infinity());
  CHECK(ProjectivePoint::parse("1/3", 2).value().value() == mpq_class(1, 3));
}

TEST_CASE("residues, truncation and digit expansions") {
  PadicNumber third(mpq_class(1, 3), 2);
  // 1/3 = ...010101011 in base 2.
  CHECK(third.residue(4) == 11);
  CHECK(third.residue(6) == 43);
  CHECK(third.truncate(6).value() == 43);
  CHECK(PadicNumber(20, 2).truncate(3).value() == 4);
  CHECK(PadicNumber(20, 2).truncate(2).is_zero());

  DigitExpansion e = digits(PadicNumber(20, 2), 4);
  CHECK(e.start == 2);
  CHECK(e.digits == std::vector<unsigned long>{1, 0, 1, 0});
  CHECK(e.to_string() == "1 0 1 0 @ 2");
  CHECK(digits(PadicNumber(0, 2), 5).empty());
}

TEST_CASE("randomized field laws for valuations") {
  std::mt19937_64 rng(11);
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
    for (int i = 0; i < 400; ++i) {
      PadicNumber x(fixtures::random_rational(rng), p), y(fixtures::random_rational(rng), p);
      if (x.is_zero() || y.is_zero()) continue;
      CHECK((x * y).valuation() == x.valuation() + y.valuation());
      Valuation s = (x + y).valuation();
      CHECK(s >= std::min(x.valuation(), y.valuation()));
      if (x.valuation() != y.valuation()) CHECK(s == std::min(x.valuation(), y.valuation()));
      CHECK(((x / y) * y) == x);
      CHECK(PadicNumber::parse(x.to_string(), p) == x);
      CHECK((x.abs() * y.abs()) == (x * y).abs());
    }
  }
}

TEST_CASE("digit expansion reconstructs the truncation") {
  std::mt19937_64 rng(12);
  for (unsigned long p : {2UL, 3UL, 7UL}) {
    for (int i = 0; i < 200; ++i) {
      PadicNumber x(fixtures::random_rational(rng, 30), p);
      if (x.is_zero()) continue;
      const std::size_t n = 24;
      DigitExpansion e = digits(x, n);
      for (auto d : e.digits) CHECK(d < p);
      PadicNumber back = reconstruct(e, p);
      long k = x.valuation().value() + static_cast<long>(n);
      CHECK((x - back).valuation() >= Valuation(k));
      if (x.valuation() >= Valuation(0)) CHECK(back == x.truncate(k));
    }
  }
}

TEST_CASE("spherical distance is an ultrametric on P^1") {
  std::mt19937_64 rng(13);
  auto random_point = [&](unsigned long p) {
    if (rng() % 10 == 0) return ProjectivePoint::infinity(p);
    return ProjectivePoint(PadicNumber(fixtures::random_rational(rng, 20), p));
  };
  for (int i = 0; i < 500; ++i) {
    auto x = random_point(2), y = random_point(2), z = random_point(2);
    CHECK(spherical_distance(x, y) == spherical_distance(y, x));
    CHECK(spherical_distance(x, z) <= max(spherical_distance(x, y), spherical_distance(y, z)));
    CHECK(spherical_distance(x, y) <= AbsValue::from_exponent(0));
    CHECK(spherical_distance(x, x).is_zero());
  }
}
