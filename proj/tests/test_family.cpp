#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "padic/errors.hpp"
#include "padic/family.hpp"

using namespace padic;

TEST_CASE("affine forms") {
  AffineForm a = AffineForm::parse("2n+3");
  CHECK(a == AffineForm{2, 3});
  CHECK(a.at(4) == 11);
  CHECK(a.to_string() == "2n+3");
  CHECK(AffineForm::parse("n").to_string() == "n");
  CHECK(AffineForm::parse("-n-1") == AffineForm{-1, -1});
  CHECK(AffineForm::parse("5") == AffineForm{0, 5});
  CHECK(a.shifted(-1) == AffineForm{2, 1});
  CHECK(always_greater(AffineForm{2, 3}, AffineForm{1, 4}, 2));
  CHECK_FALSE(always_greater(AffineForm{2, 3}, AffineForm{1, 4}, 1));
  CHECK(always_at_least(AffineForm{2, 3}, AffineForm{1, 4}, 1));
  CHECK_THROWS_AS(AffineForm::parse("n^2"), ParseError);
}

TEST_CASE("family templates reproduce the alpha and beta disks") {
  FamilyTemplate alpha = FamilyTemplate::parse("2^(2n)", "2n+3", 2);
  FamilyTemplate beta = FamilyTemplate::parse("1 + 2^(n+1)", "n+3", 2);
  FamilyTemplate beta_p = FamilyTemplate::parse("1 + 3*2^(n+1)", "n+3", 2);
  CHECK(alpha.disk(1) == Disk::parse("4 + 2^5 * Z", 2));
  CHECK(alpha.disk(2) == Disk::parse("16 + 2^7 * Z", 2));
  CHECK(beta.disk(1) == Disk::parse("5 + 2^4 * Z", 2));
  CHECK(beta_p.disk(1) == Disk::parse("13 + 2^4 * Z", 2));
  CHECK(beta.center_string() == "1 + 2^(n+1)");
  for (long n = 1; n <= 20; ++n) CHECK(disjoint(beta.disk(n), beta_p.disk(n)));
  // 1 + 2^(n+1) + 2^(n+3) names the same disks as 1 + 2^(n+1).
  CHECK(same_disks(beta, FamilyTemplate::parse("1 + 2^(n+1) + 2^(n+3)", "n+3", 2), 1));
  CHECK_FALSE(same_disks(beta, beta_p, 1));
}

TEST_CASE("Laurent polynomials in X = p^n") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 200; ++i) {
    std::map<long, mpq_class> ta, tb;
    for (int k = 0; k < 3; ++k) {
      ta[static_cast<long>(rng() % 7) - 3] = fixtures::random_rational(rng, 6);
      tb[static_cast<long>(rng() % 7) - 3] = fixtures::random_rational(rng, 6);
    }
    Laurent a(3, ta), b(3, tb);
    long n = static_cast<long>(rng() % 9) - 4;
    CHECK((a + b).at(n) == a.at(n) + b.at(n));
    CHECK((a * b).at(n) == a.at(n) * b.at(n));
    CHECK((a - a).is_zero());
    CHECK(a.shifted(2).at(n) == a.at(n + 2));
    Polynomial g(std::vector<mpq_class>{fixtures::random_rational(rng, 4), 0, fixtures::random_rational(rng, 4), 1});
    CHECK(compose(g, a).at(n) == g(a.at(n)));
  }
}

TEST_CASE("dominant valuations decide family images symbolically") {
  // f(2^(2n)) = 9/4 * 2^(2n) (2^(2n) - 1)^2 has valuation 2n - 2 for n >= 1.
  Polynomial f(std::vector<mpq_class>{0, mpq_class(9, 4), mpq_class(-9, 2), mpq_class(9, 4)});
  Laurent center(2, {{2, mpq_class(1)}});
  Laurent image = compose(f, center);
  auto dom = dominant_valuation(image, 1);
  REQUIRE(dom);
  CHECK(*dom == AffineForm{2, -2});
  CHECK(valuation_at_least(image, AffineForm{2, -2}, 1));
  CHECK_FALSE(valuation_at_least(image, AffineForm{2, -1}, 1));
  // 1 + X - X has no dominant term beyond the constant, and X - X vanishes.
  CHECK((center - center).is_zero());
}
