#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "padic/errors.hpp"
#include "padic/partition.hpp"

using namespace padic;

namespace {

const PartitionModel& stock_model() {
  static const PartitionModel m = build_partition(fixtures::stock_map());
  return m;
}

SymbolRef member(const PartitionModel& m, const char* family, long n) {
  auto id = m.graph.find_family(family);
  REQUIRE(id);
  return SymbolRef::member(*id, n);
}

const FamilySymbol& family(const PartitionModel& m, const char* name) {
  auto it = std::find_if(m.families.begin(), m.families.end(), [&](const FamilySymbol& f) { return f.name == name; });
  REQUIRE(it != m.families.end());
  return *it;
}

}  // namespace

TEST_CASE("symbols of the stock partition") {
  const PartitionModel& m = stock_model();
  CHECK(m.iterate == 1);
  REQUIRE(m.singletons.size() == 2);
  CHECK(m.singletons[0].name == "alpha_inf");
  CHECK(m.singletons[0].point == ProjectivePoint(PadicNumber(0, 2)));
  CHECK(m.singletons[1].name == "beta_inf");
  CHECK(m.singletons[1].point == ProjectivePoint(PadicNumber(1, 2)));
  CHECK(m.isolated.empty());
  REQUIRE(m.families.size() == 4);
  CHECK(same_disks(family(m, "alpha").tmpl, FamilyTemplate::parse("2^(2n)", "2n+3", 2), 1));
  CHECK(same_disks(family(m, "alpha'").tmpl, FamilyTemplate::parse("5*2^(2n)", "2n+3", 2), 1));
  CHECK(same_disks(family(m, "beta").tmpl, FamilyTemplate::parse("1 + 2^(n+1)", "n+3", 2), 1));
  CHECK(same_disks(family(m, "beta'").tmpl, FamilyTemplate::parse("1 + 3*2^(n+1)", "n+3", 2), 1));
  for (const auto& f : m.families) CHECK(f.domain == IndexSet::all_from(1));
  CHECK(*family(m, "alpha").ratio_exp == AffineForm{0, -2});
  CHECK(*family(m, "beta").ratio_exp == AffineForm{1, 0});
  REQUIRE(m.julia_region.size() == 2);
  CHECK(m.julia_region[0] == Disk::parse("2^2 * Z", 2));
  CHECK(m.julia_region[1] == Disk::parse("1 + 2^2 * Z", 2));
}

TEST_CASE("transition rules of the stock partition") {
  const PartitionModel& m = stock_model();
  const TransitionGraph& g = m.graph;
  SymbolRef a1 = member(m, "alpha", 1);
  CHECK(g.has_edge(a1, m.singleton_ref(1)));
  for (long k = 2; k <= 12; ++k) {
    CHECK(g.has_edge(a1, member(m, "beta", k)));
    CHECK(g.has_edge(a1, member(m, "beta'", k)));
    CHECK(g.has_edge(member(m, "alpha", k), member(m, "alpha", k - 1)));
    CHECK(g.has_edge(member(m, "alpha'", k), member(m, "alpha'", k - 1)));
    CHECK(g.has_edge(member(m, "beta", k), member(m, "alpha", k)));
    CHECK(g.has_edge(member(m, "beta'", k), member(m, "alpha", k)));
    CHECK(g.successors(member(m, "alpha", k)).finite.size() == 1);
  }
  CHECK_FALSE(g.has_edge(a1, member(m, "beta", 1)));
  // f(B_1) = f(B'_1) = 20 + 2^5 Z is A'_1, not A_1.
  CHECK(g.has_edge(member(m, "beta", 1), member(m, "alpha'", 1)));
  CHECK(g.has_edge(member(m, "beta'", 1), member(m, "alpha'", 1)));
  CHECK_FALSE(g.has_edge(member(m, "beta", 1), a1));
  CHECK(g.has_edge(member(m, "alpha'", 1), member(m, "beta", 1)));
  CHECK(g.has_edge(member(m, "alpha'", 1), member(m, "beta'", 1)));
  CHECK(g.has_edge(m.singleton_ref(0), m.singleton_ref(0)));
  CHECK(g.has_edge(m.singleton_ref(1), m.singleton_ref(0)));
}

TEST_CASE("the stock partition passes its own compatibility check") {
  const PartitionModel& m = stock_model();
  CompatibilityReport r = check_compatibility(m, fixtures::stock_map());
  CHECK(r.ok());
  CHECK(r.concrete_checks > 0);
  CHECK(r.symbolic_checks > 0);
}

TEST_CASE("a tampered model fails the compatibility check") {
  PartitionModel m = stock_model();
  TransitionGraph g;
  for (const auto& c : m.graph.concrete()) g.add_concrete(c.name, c.display);
  for (const auto& f : m.graph.families()) g.add_family(f.name, f.display, f.domain);
  const std::size_t beta = *m.graph.find_family("beta"), alpha = *m.graph.find_family("alpha");
  for (EdgeRule r : m.graph.rules()) {
    // Claim f(B_n) = A_{n+1} instead of A_n.
    if (r.source_kind == SymbolRef::Kind::Family && r.source_id == beta && r.target.kind == TargetPattern::Kind::Shift &&
        r.target.id == alpha)
      r.target.shift = 1;
    g.add_rule(r);
  }
  m.graph = g;
  CHECK_FALSE(check_compatibility(m, fixtures::stock_map()).ok());
}

TEST_CASE("lookups") {
  const PartitionModel& m = stock_model();
  CHECK(lookup(m, PadicNumber(4, 2)) == member(m, "alpha", 1));
  CHECK(lookup(m, PadicNumber(20, 2)) == member(m, "alpha'", 1));
  CHECK(lookup(m, PadicNumber(1 + 8, 2)) == member(m, "beta", 2));
  CHECK(lookup(m, PadicNumber(0, 2)) == m.singleton_ref(0));
  CHECK(lookup(m, PadicNumber(1, 2)) == m.singleton_ref(1));
  CHECK_FALSE(lookup(m, PadicNumber(2, 2)));
  CHECK_FALSE(lookup(m, PadicNumber(3, 2)));
  CHECK_FALSE(lookup(m, ProjectivePoint::infinity(2)));
  CHECK(lookup_ball(m, Disk::parse("36 + 2^7 * Z", 2)) == member(m, "alpha", 1));
  CHECK_FALSE(lookup_ball(m, Disk::parse("2^2 * Z", 2)));
  CHECK(m.disk_of(member(m, "beta'", 3)) == Disk::parse("49 + 2^6 * Z", 2));
}

TEST_CASE("decomposition of the image of A_1") {
  const PartitionModel& m = stock_model();
  Decomposition d = decompose(m, fixtures::stock_map(), Disk::parse("1 + 2^3 * Z", 2));
  CHECK(d.problems.empty());
  CHECK(d.successors.contains(m.singleton_ref(1)));
  CHECK(d.successors.contains(member(m, "beta", 7)));
  CHECK(d.successors.contains(member(m, "beta'", 2)));
  CHECK_FALSE(d.successors.contains(member(m, "beta", 1)));
}

TEST_CASE("maps without a Julia set and a full 2-shift") {
  // x^2 over Q_2 has good reduction: empty Julia set.
  PartitionModel sq = build_partition(fixtures::polynomial_map({0, 0, 1}, 2));
  CHECK(sq.families.empty());
  CHECK(sq.isolated.empty());
  CHECK(sq.julia_region.empty());

  // (z^2 - z)/2: two isolated disks 2Z and 1 + 2Z, each mapping onto both.
  PartitionModel fs = build_partition(fixtures::polynomial_map({0, mpq_class(-1, 2), mpq_class(1, 2)}, 2));
  REQUIRE(fs.isolated.size() == 2);
  CHECK(fs.isolated[0].disk == Disk::parse("2 * Z", 2));
  CHECK(fs.isolated[1].disk == Disk::parse("1 + 2 * Z", 2));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(fs.graph.has_edge(fs.isolated_ref(i), fs.isolated_ref(j)));
}

TEST_CASE("unsupported maps") {
  CHECK_THROWS_AS(build_partition(fixtures::polynomial_map({0, mpq_class(1, 4), 0, 1}, 2)), UnsupportedMap);
  BuildOptions tight;
  tight.orbit.horizon = 1;
  CHECK_THROWS_AS(build_partition(fixtures::stock_map(), tight), Undetermined);
}

TEST_CASE("Julia residues are the classes of the symbols") {
  const PartitionModel& m = stock_model();
  RationalMap f = fixtures::stock_map();
  auto res = julia_residues(m, f, 6);
  CHECK_FALSE(res.empty());
  for (const auto& d : res) {
    CHECK(d.radius_exp() == 6);
    bool inside = std::any_of(m.julia_region.begin(), m.julia_region.end(), [&](const Disk& r) { return contains(r, d); });
    CHECK(inside);
  }
  // 0 and 1 are Julia points; 20 + 64Z lies in A'_1.
  auto has = [&](long c) { return std::find(res.begin(), res.end(), Disk::closed_ball(PadicNumber(c, 2), 6)) != res.end(); };
  CHECK(has(0));
  CHECK(has(1));
  CHECK(has(4));
}
