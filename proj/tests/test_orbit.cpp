#include "doctest.h"
#include "fixtures.hpp"
#include "padic/errors.hpp"
#include "padic/orbit.hpp"

using namespace padic;

namespace {

std::vector<CriticalPoint> finite_critical_points(const RationalMap& f) {
  std::vector<CriticalPoint> out;
  for (const auto& c : rational_critical_points(f).points)
    if (!c.location.is_infinity()) out.push_back(c);
  return out;
}

}  // namespace

TEST_CASE("basin certificates for the stock map") {
  RationalMap f = fixtures::stock_map();
  BasinCertificates b = certify_basins(f);
  CHECK(b.infinity_escape);
  bool third = false;
  for (const auto& d : b.invariant_disks) {
    if (d.fixed_point == ProjectivePoint(PadicNumber(mpq_class(1, 3), 2))) third = true;
    CHECK(membership(d.fixed_point, d.disk));
  }
  CHECK(third);
  CHECK(certify_ball(f, b, Disk::parse("2 + 2^2 * Z", 2)).fate == BallFate::Escapes);
  CHECK(certify_ball(f, b, Disk::parse("3 + 2^2 * Z", 2)).fate == BallFate::Invariant);
  CHECK(certify_ball(f, b, Disk::parse("2^2 * Z", 2)).fate == BallFate::Unknown);
}

TEST_CASE("critical orbits of the stock map") {
  RationalMap f = fixtures::stock_map();
  OrbitReport r = critical_orbit_analysis(f, finite_critical_points(f), certify_basins(f));
  REQUIRE(r.orbits.size() == 2);
  CHECK_FALSE(r.undetermined());
  CHECK(r.geometrically_finite());
  auto julia = r.julia_critical();
  REQUIRE(julia.size() == 1);
  const CriticalOrbit& one = *julia.front();
  CHECK(one.critical.location == ProjectivePoint(PadicNumber(1, 2)));
  REQUIRE(one.orbit.size() == 2);
  CHECK(one.orbit[1] == ProjectivePoint(PadicNumber(0, 2)));
  CHECK(one.period == 1);
  CHECK(one.cycle_type == CycleType::Repelling);
  CHECK(one.multiplier == mpq_class(9, 4));
  CHECK(one.iteratedly_prefixed());
  for (const auto& o : r.orbits)
    if (o.critical.location == ProjectivePoint(PadicNumber(mpq_class(1, 3), 2))) {
      CHECK(o.fate == OrbitFate::Preperiodic);
      CHECK(o.cycle_type == CycleType::Superattracting);
      CHECK_FALSE(o.julia());
    }
}

TEST_CASE("point certificates") {
  RationalMap f = fixtures::stock_map();
  BasinCertificates b = certify_basins(f);
  FatouCertificate esc = fatou_certificate(f, b, PadicNumber(2, 2));
  CHECK(esc.kind == FatouCertificate::Kind::Escape);
  FatouCertificate att = fatou_certificate(f, b, PadicNumber(3, 2));
  CHECK(att.kind == FatouCertificate::Kind::Attracting);
  REQUIRE(att.basin_point);
  CHECK(*att.basin_point == ProjectivePoint(PadicNumber(mpq_class(1, 3), 2)));
  FatouCertificate j = fatou_certificate(f, b, PadicNumber(1, 2));
  CHECK(j.kind == FatouCertificate::Kind::JuliaCandidate);
  CHECK(j.eventually_periodic);
  // 4 maps to 81, which is 1 mod 16 and wanders off before landing in a basin.
  FatouCertificate four = fatou_certificate(f, b, PadicNumber(4, 2));
  CHECK(four.kind != FatouCertificate::Kind::JuliaCandidate);
}

TEST_CASE("a small horizon leaves orbits undetermined") {
  RationalMap f = fixtures::stock_map();
  OrbitOptions tight;
  tight.horizon = 1;
  OrbitReport r = critical_orbit_analysis(f, finite_critical_points(f), certify_basins(f), tight);
  CHECK(r.undetermined());
}

TEST_CASE("an indifferent cycle is certified Fatou") {
  // x^2 - 2 over Q_3: 0 -> -2 -> 2 with f(2) = 2 and multiplier 4, |4|_3 = 1.
  RationalMap g = fixtures::polynomial_map({-2, 0, 1}, 3);
  OrbitReport r = critical_orbit_analysis(g, finite_critical_points(g), certify_basins(g));
  CHECK_FALSE(r.undetermined());
  REQUIRE(r.orbits.size() == 1);
  CHECK_FALSE(r.orbits[0].julia());
  CHECK(r.julia_critical().empty());
}

TEST_CASE("a full 2-shift has no Julia critical points") {
  // (z^2 - z)/2 over Q_2 is a full 2-shift with no finite critical points in
  // the Julia set, so the Julia critical list is empty.
  RationalMap g = fixtures::polynomial_map({0, mpq_class(-1, 2), mpq_class(1, 2)}, 2);
  OrbitReport r = critical_orbit_analysis(g, finite_critical_points(g), certify_basins(g));
  CHECK(r.julia_critical().empty());
  CHECK(r.geometrically_finite());
}
