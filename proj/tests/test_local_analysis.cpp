// Scaling disks, image hulls and disk images for the stock map and a few
// others.  Exact values below were checked by hand from the Taylor expansion
// f(c + t) = f(c) + f'(c) t + f''(c)/2 t^2 + 9/4 t^3.
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "padic/local_analysis.hpp"

using namespace padic;

namespace {

PadicNumber two_pow(long k) { return PadicNumber(mpq_class(power(2, static_cast<unsigned long>(k))), 2); }

}  // namespace

TEST_CASE("scaling on 4Z_2 with ratio 4") {
  RationalMap f = fixtures::stock_map();
  Disk d = Disk::parse("2^2 * Z", 2);
  CHECK(is_scaling_on(f, d));
  CHECK(scaling_ratio_valuation(f, d) == -2);
  CHECK_FALSE(is_scaling_on(f, Disk::integers(2)));
}

TEST_CASE("maximal scaling disks on the beta side") {
  RationalMap f = fixtures::stock_map();
  for (long n = 2; n <= 10; ++n) {
    PadicNumber x0 = PadicNumber(1, 2) + two_pow(n + 1);
    ScalingDisk s = maximal_scaling_disk(f, x0);
    CHECK(s.radius_exp() == n + 3);
    CHECK(s.open_radius_exp() == n + 2);
    CHECK(s.ratio == AbsValue::from_exponent(-n));
  }
}

TEST_CASE("disk images around the repelling fixed point 0") {
  RationalMap f = fixtures::stock_map();
  for (long n = 1; n <= 8; ++n) {
    DiskUnion u = disk_image(f, Disk::closed_ball(PadicNumber(0, 2), n + 1));
    REQUIRE(u.is_single_ball());
    CHECK(u.balls.front() == Disk::closed_ball(PadicNumber(0, 2), n - 1));
  }
}

TEST_CASE("the image of A_1 = 4 + 2^5 Z covers 1 + 2^3 Z around the critical value") {
  RationalMap f = fixtures::stock_map();
  Disk a1 = Disk::parse("4 + 2^5 * Z", 2);
  Disk hull = image_hull(f, a1);
  CHECK(membership(PadicNumber(81, 2), hull));
  CHECK(contains(Disk::parse("1 + 2^3 * Z", 2), hull));
  // 1 is critical with f(1) = 0; near it |f(x)| = |9/4| |x - 1|^2.
  long k = critical_radius_exp(f, PadicNumber(1, 2));
  CHECK(k <= 2);
}

TEST_CASE("randomized: scaling disks really scale") {
  RationalMap f = fixtures::stock_map();
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    PadicNumber x0(fixtures::random_integer(rng, 20), 2);
    if ((x0 - PadicNumber(1, 2)).is_zero()) continue;
    ScalingDisk s = maximal_scaling_disk(f, x0);
    const long k = s.radius_exp();
    for (int j = 0; j < 10; ++j) {
      PadicNumber x = x0 + two_pow(k) * PadicNumber(fixtures::random_integer(rng, 16), 2);
      PadicNumber y = x0 + two_pow(k) * PadicNumber(fixtures::random_integer(rng, 16), 2);
      if (x == y) continue;
      CHECK(abs_p(f(x) - f(y)) == s.ratio * abs_p(x - y));
      ++checked;
    }
    // Just outside the disk the ratio is no longer constant for some pair, or
    // the larger ball contains a critical point.
    CHECK_FALSE((is_scaling_on(f, tree_parent(s.disk)) &&
                 scaling_ratio_valuation(f, tree_parent(s.disk)) == -s.ratio.exponent()));
  }
  CHECK(checked > 1500);
}

TEST_CASE("tame critical point: p = 3, f(x) = x^2") {
  RationalMap g = fixtures::polynomial_map({0, 0, 1}, 3);
  Disk d = Disk::closed_ball(PadicNumber(0, 3), 2);
  DiskUnion u = disk_image(g, d);
  // Over C_3 the image of 9Z_3 under x^2 is 81 O; the Q_3-image is smaller,
  // but the hull reported around the critical value is D(0, 3^-4).
  REQUIRE(u.critical_images.size() == 1);
  CHECK(u.critical_images.front().local_degree == 2);
  CHECK(u.critical_images.front().image == Disk::closed_ball(PadicNumber(0, 3), 4));
}
