#include <cmath>
#include <random>

#include "doctest.h"
#include "padic/entropy.hpp"
#include "padic/errors.hpp"

using namespace padic;

namespace {

TransitionGraph stock_graph() {
  // alpha_1 -> beta_m, beta'_m (m >= 2); alpha_n -> alpha_{n-1}; beta_n, beta'_n -> alpha_n (n >= 2).
  TransitionGraph g;
  std::size_t a = g.add_family("alpha", "α");
  std::size_t b = g.add_family("beta", "β", IndexSet::all_from(2));
  std::size_t c = g.add_family("beta'", "β′", IndexSet::all_from(2));
  g.add_rule({SymbolRef::Kind::Family, a, {1, 1}, {TargetPattern::Kind::Range, b, 0, {2, kUnbounded}}});
  g.add_rule({SymbolRef::Kind::Family, a, {1, 1}, {TargetPattern::Kind::Range, c, 0, {2, kUnbounded}}});
  g.add_rule({SymbolRef::Kind::Family, a, {2, kUnbounded}, {TargetPattern::Kind::Shift, a, -1, {}}});
  g.add_rule({SymbolRef::Kind::Family, b, {2, kUnbounded}, {TargetPattern::Kind::Shift, a, 0, {}}});
  g.add_rule({SymbolRef::Kind::Family, c, {2, kUnbounded}, {TargetPattern::Kind::Shift, a, 0, {}}});
  return g;
}

TransitionGraph random_finite_graph(std::mt19937_64& rng, std::size_t n) {
  TransitionGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_concrete("v" + std::to_string(i), "v" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rng() % 3 == 0) g.add_rule({SymbolRef::Kind::Concrete, i, {}, {TargetPattern::Kind::Concrete, j, 0, {}}});
  return g;
}

// Root of 2z^3 + z - 1 on (0, 1) by plain bisection in double precision.
double cubic_root() {
  double lo = 0, hi = 1;
  for (int i = 0; i < 200; ++i) {
    double mid = (lo + hi) / 2;
    (2 * mid * mid * mid + mid - 1 < 0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("loop census of the stock graph") {
  TransitionGraph g = stock_graph();
  LoopCensus c = first_return_census(g, SymbolRef::member(0, 1), 30);
  REQUIRE(c.length() == 30);
  CHECK(c.delta(1) == 0);
  CHECK(c.delta(2) == 0);
  for (long n = 3; n <= 30; ++n) CHECK(c.delta(n) == 2);
  REQUIRE(c.tail);
  CHECK(c.tail->constant());
  CHECK(c.tail->values[0] == 2);
  CHECK(enumerate_first_return_loops(g, SymbolRef::member(0, 1), 16) ==
        std::vector<mpz_class>(c.counts.begin(), c.counts.begin() + 16));
}

TEST_CASE("Gurevich entropy of the stock graph") {
  TransitionGraph g = stock_graph();
  EntropyResult r = gurevich_entropy(first_return_census(g, SymbolRef::member(0, 1), 40));
  CHECK(r.method == EntropyMethod::ClosedForm);
  CHECK(r.width() <= mpq_class("1/1000000000000"));
  const double root = cubic_root();
  CHECK(r.R_lo.get_d() <= root + 1e-15);
  CHECK(r.R_hi.get_d() >= root - 1e-15);
  CHECK(r.R_mid() == doctest::Approx(0.5897545123).epsilon(1e-10));
  CHECK(r.h_lo <= -std::log(root));
  CHECK(r.h_hi >= -std::log(root));
  CHECK(r.h_mid() == doctest::Approx(0.5280489095).epsilon(1e-9));
  REQUIRE(r.characteristic.size() == 4);
  CHECK(r.characteristic == std::vector<mpz_class>{-1, 1, 0, 2});
  // G(R) = 1 sits between the endpoints.
  LoopCensus c = first_return_census(g, SymbolRef::member(0, 1), 40);
  CHECK(loop_series(c, r.R_lo) < 1);
  CHECK(loop_series(c, r.R_hi) > 1);
}

TEST_CASE("other base points give the same radius") {
  TransitionGraph g = stock_graph();
  EntropyResult r1 = gurevich_entropy(first_return_census(g, SymbolRef::member(0, 1), 40));
  EntropyResult r2 = gurevich_entropy(first_return_census(g, SymbolRef::member(0, 2), 48));
  CHECK(r2.R_lo <= r1.R_hi);
  CHECK(r1.R_lo <= r2.R_hi);
  CHECK(r2.width() <= mpq_class("1/10000000000"));
}

TEST_CASE("bases whose first returns grow without a closed form are refused") {
  // From alpha_3 the loops alpha_1 -> beta_2 -> alpha_2 -> alpha_1 can repeat
  // before the return, so delta(n) grows exponentially.
  TransitionGraph g = stock_graph();
  LoopCensus c = first_return_census(g, SymbolRef::member(0, 3), 40);
  CHECK_FALSE(c.tail);
  CHECK(c.delta(40) > c.delta(30));
  CHECK_THROWS_AS(gurevich_entropy(c), Error);
}

TEST_CASE("golden mean shift: R = (sqrt 5 - 1) / 2") {
  TransitionGraph g;
  g.add_concrete("a", "a");
  g.add_concrete("b", "b");
  g.add_rule({SymbolRef::Kind::Concrete, 0, {}, {TargetPattern::Kind::Concrete, 0, 0, {}}});
  g.add_rule({SymbolRef::Kind::Concrete, 0, {}, {TargetPattern::Kind::Concrete, 1, 0, {}}});
  g.add_rule({SymbolRef::Kind::Concrete, 1, {}, {TargetPattern::Kind::Concrete, 0, 0, {}}});
  EntropyResult r = gurevich_entropy(first_return_census(g, SymbolRef::concrete(0), 32));
  const double golden = (std::sqrt(5.0) - 1) / 2;
  CHECK(r.R_lo.get_d() <= golden + 1e-15);
  CHECK(r.R_hi.get_d() >= golden - 1e-15);
  CHECK(truncated_perron(g, 1).value == doctest::Approx(1 / golden).epsilon(1e-9));
}

TEST_CASE("Perron radius of truncations increases to 1/R") {
  TransitionGraph g = stock_graph();
  double prev = 0;
  for (long bound : {4L, 8L, 16L}) {
    PerronEstimate e = truncated_perron(g, bound);
    CHECK(e.lower <= e.upper);
    CHECK(e.value >= prev);
    prev = e.value;
  }
  CHECK(std::abs(prev - 1 / cubic_root()) < 1e-3);
}

TEST_CASE("randomized: memoized census equals explicit enumeration") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 40; ++i) {
    TransitionGraph g = random_finite_graph(rng, 2 + rng() % 4);
    SymbolRef base = SymbolRef::concrete(rng() % g.concrete().size());
    LoopCensus c = first_return_census(g, base, 12);
    CHECK(enumerate_first_return_loops(g, base, 12) == c.counts);
  }
}
