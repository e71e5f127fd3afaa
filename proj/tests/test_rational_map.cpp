#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "padic/errors.hpp"
#include "padic/polynomial.hpp"
#include "padic/rational_map.hpp"

using namespace padic;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int deg) {
  std::vector<mpq_class> c;
  for (int i = 0; i <= deg; ++i) c.push_back(fixtures::random_rational(rng, 12));
  return Polynomial(c);
}

bool has_point(const std::vector<ProjectivePoint>& v, const ProjectivePoint& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

TEST_CASE("polynomial arithmetic agrees with evaluation") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    Polynomial a = random_poly(rng, static_cast<int>(rng() % 5)), b = random_poly(rng, static_cast<int>(rng() % 4));
    mpq_class x = fixtures::random_rational(rng, 10);
    CHECK((a * b)(x) == a(x) * b(x));
    CHECK((a + b)(x) == a(x) + b(x));
    CHECK(a.compose(b)(x) == a(b(x)));
    CHECK(a.taylor_shift(x)(mpq_class(0)) == a(x));
    if (!b.is_zero()) {
      auto [q, r] = divmod(a, b);
      CHECK(q * b + r == a);
      CHECK(r.degree() < b.degree());
    }
  }
}

TEST_CASE("rational roots with multiplicity") {
  // 9x^3 - 18x^2 + 9x = 9x(x-1)^2
  Polynomial p(std::vector<mpq_class>{0, 9, -18, 9});
  auto roots = rational_roots(p);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == std::pair<mpq_class, int>{0, 1});
  CHECK(roots[1] == std::pair<mpq_class, int>{1, 2});
  // (3x - 1)(x - 1) has roots 1/3 and 1; x^2 + 1 has none.
  CHECK(rational_roots(Polynomial(std::vector<mpq_class>{1, -4, 3})).size() == 2);
  CHECK(rational_roots(Polynomial(std::vector<mpq_class>{1, 0, 1})).empty());
}

TEST_CASE("the stock map: values, fixed points and multipliers") {
  RationalMap f = fixtures::stock_map();
  CHECK(f.degree() == 3);
  CHECK(f(PadicNumber(1, 2)).is_zero());
  CHECK(f(PadicNumber(4, 2)).value() == 81);
  CHECK(f(ProjectivePoint::infinity(2)).is_infinity());

  auto fixed = rational_fixed_points(f);
  CHECK(fixed.size() == 4);
  CHECK(has_point(fixed, PadicNumber(0, 2)));
  CHECK(has_point(fixed, PadicNumber(mpq_class(1, 3), 2)));
  CHECK(has_point(fixed, PadicNumber(mpq_class(5, 3), 2)));
  CHECK(has_point(fixed, ProjectivePoint::infinity(2)));
  CHECK(cycle_multiplier(f, {PadicNumber(0, 2)}) == mpq_class(9, 4));
  CHECK(cycle_multiplier(f, {PadicNumber(mpq_class(5, 3), 2)}) == 6);
  CHECK(cycle_multiplier(f, {PadicNumber(mpq_class(1, 3), 2)}) == 0);
}

TEST_CASE("critical points of the stock map") {
  RationalMap f = fixtures::stock_map();
  CriticalPointReport r = rational_critical_points(f);
  CHECK(r.complete());
  CHECK(r.expected == 4);
  REQUIRE(r.points.size() == 3);
  for (const auto& c : r.points) {
    if (c.location.is_infinity()) {
      CHECK(c.local_degree == 3);
      CHECK(c.kind == CriticalKind::Tame);
    } else {
      // Local degree 2 at p = 2 is wild.
      CHECK(c.local_degree == 2);
      CHECK(c.kind == CriticalKind::Wild);
      CHECK(derivative(f)(c.location.value()).is_zero());
    }
  }
  CHECK(local_degree(f, PadicNumber(4, 2)) == 1);
}

TEST_CASE("irrational critical points are reported incomplete") {
  // x^3 + x/4: f' = 3x^2 + 1/4 has no rational root.
  RationalMap g = fixtures::polynomial_map({0, mpq_class(1, 4), 0, 1}, 2);
  CriticalPointReport r = rational_critical_points(g);
  CHECK_FALSE(r.complete());
  CHECK(r.found == 2);  // only infinity, with multiplicity 2
}

TEST_CASE("randomized chain rule and composition") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    RationalMap f(random_poly(rng, 2), Polynomial::constant(1), 3);
    RationalMap g(random_poly(rng, 2), random_poly(rng, 1), 3);
    if (g.denominator().is_zero() || g.denominator().degree() < 0) continue;
    mpq_class x = fixtures::random_rational(rng, 8);
    if (g.denominator()(x) == 0) continue;
    PadicNumber px(x, 3);
    RationalMap h = compose(f, g);
    CHECK(h(px) == f(g(px)));
    PadicNumber lhs = derivative(h)(px);
    PadicNumber rhs = derivative(f)(g(px)) * derivative(g)(px);
    CHECK(lhs == rhs);
    CHECK(iterate(f, 2)(px) == f(f(px)));
  }
}

TEST_CASE("local expansion starts at the local degree") {
  RationalMap f = fixtures::stock_map();
  auto at_one = local_expansion(f, PadicNumber(1, 2), 4);
  CHECK(at_one[0] == 0);
  CHECK(at_one[1] == 0);
  CHECK(at_one[2] == mpq_class(9, 4));
  auto at_inf = local_expansion(f, ProjectivePoint::infinity(2), 5);
  CHECK(at_inf[1] == 0);
  CHECK(at_inf[2] == 0);
  CHECK(at_inf[3] == mpq_class(4, 9));
}
