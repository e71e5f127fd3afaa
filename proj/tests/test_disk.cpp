#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "padic/disk.hpp"
#include "padic/errors.hpp"

using namespace padic;

namespace {

Disk random_ball(std::mt19937_64& rng, unsigned long p) {
  long k = static_cast<long>(rng() % 12) - 2;
  return Disk::closed_ball(PadicNumber(fixtures::random_rational(rng, 16), p), k);
}

}  // namespace

TEST_CASE("canonical closed form") {
  // {|x - 4| < 2^-4} is the closed ball of radius 2^-5.
  Disk open = Disk::open_ball(PadicNumber(4, 2), 4);
  CHECK(open == Disk::closed_ball(PadicNumber(36, 2), 5));
  CHECK(open.radius_exp() == 5);
  CHECK(open.center().value() == 4);
  CHECK(open.to_string() == "4 + 2^5 * Z");
  CHECK(Disk::parse("4 + 2^5 * Z", 2) == open);
  CHECK(Disk::parse("2^2 * Z", 2) == Disk::closed_ball(PadicNumber(0, 2), 2));
  CHECK(Disk::parse(Disk::integers(3).to_string(), 3) == Disk::integers(3));
  CHECK(Disk::parse("1 + 3 * Z", 3) == Disk::closed_ball(PadicNumber(1, 3), 1));
  CHECK(Disk::parse("Z", 5) == Disk::integers(5));
}

TEST_CASE("membership and containment") {
  Disk a1 = Disk::parse("4 + 2^5 * Z", 2);
  CHECK(membership(PadicNumber(36, 2), a1));
  CHECK_FALSE(membership(PadicNumber(20, 2), a1));
  // 4/33 = 4 (1 - 32 + ...) lies in 4 + 2^5 Z.
  CHECK(membership(PadicNumber(mpq_class(4, 33), 2), a1));
  CHECK_FALSE(membership(ProjectivePoint::infinity(2), a1));
  Disk out = Disk::complement_of(Disk::integers(2));
  CHECK(membership(ProjectivePoint::infinity(2), out));
  CHECK(membership(PadicNumber(mpq_class(1, 2), 2), out));
  CHECK_FALSE(membership(PadicNumber(3, 2), out));
  CHECK(contains(Disk::parse("2^2 * Z", 2), a1));
  CHECK(disjoint(a1, Disk::parse("20 + 2^5 * Z", 2)));
  CHECK(contains(a1, Disk::point(PadicNumber(4, 2))));
}

TEST_CASE("residue children partition their parent") {
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    Disk d = Disk::closed_ball(PadicNumber(7, p), 2);
    auto kids = residue_children(d);
    REQUIRE(kids.size() == p);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      CHECK(kids[i].radius_exp() == 3);
      CHECK(contains(d, kids[i]));
      CHECK(tree_parent(kids[i]) == d);
      for (std::size_t j = i + 1; j < kids.size(); ++j) CHECK(disjoint(kids[i], kids[j]));
    }
  }
}

TEST_CASE("randomized dichotomy: two balls are nested or disjoint") {
  std::mt19937_64 rng(21);
  for (unsigned long p : {2UL, 3UL}) {
    for (int i = 0; i < 2000; ++i) {
      Disk a = random_ball(rng, p), b = random_ball(rng, p);
      bool nested = contains(a, b) || contains(b, a);
      CHECK(nested != disjoint(a, b));
      // Every point of a ball is a center.
      PadicNumber c = a.center() + PadicNumber(fixtures::random_integer(rng, 10), p) *
                                       PadicNumber(mpq_class(power(p, static_cast<unsigned long>(std::max(a.radius_exp(), 0L)))), p);
      if (a.radius_exp() >= 0) CHECK(Disk::closed_ball(c, a.radius_exp()) == a);
      CHECK(Disk::parse(a.to_string(), p) == a);
      CHECK(a.hash() == Disk::closed_ball(a.center(), a.radius_exp()).hash());
    }
  }
}

TEST_CASE("diameters and ancestors") {
  Disk d = Disk::parse("1 + 2^4 * Z", 2);
  CHECK(diameter(d) == AbsValue::from_exponent(-4));
  auto up = ancestors(d, 1);
  REQUIRE(up.size() == 3);
  CHECK(up.back() == Disk::parse("1 + 2 * Z", 2));
  CHECK(meets_integers(d));
  CHECK_FALSE(meets_integers(Disk::closed_ball(PadicNumber(mpq_class(1, 2), 2), 3)));
  std::vector<ProjectivePoint> removed{ProjectivePoint(PadicNumber(17, 2))};
  CHECK(excluded_by(d, removed));
  CHECK_FALSE(excluded_by(Disk::parse("3 + 2^4 * Z", 2), removed));
}
