#include <random>

#include "doctest.h"
#include "padic/errors.hpp"
#include "padic/transition_graph.hpp"

using namespace padic;

namespace {

// A small two-family graph shaped like the stock example:
//   a_1 -> b_m (m >= 2), a_n -> a_{n-1} (n >= 2), b_n -> a_n, plus a fixed
//   point z -> z that nothing else reaches.
TransitionGraph sample() {
  TransitionGraph g;
  std::size_t z = g.add_concrete("z", "z");
  std::size_t a = g.add_family("a", "a");
  std::size_t b = g.add_family("b", "b");
  g.add_rule({SymbolRef::Kind::Concrete, z, {}, {TargetPattern::Kind::Concrete, z, 0, {}}});
  g.add_rule({SymbolRef::Kind::Family, a, {1, 1}, {TargetPattern::Kind::Range, b, 0, {2, kUnbounded}}});
  g.add_rule({SymbolRef::Kind::Family, a, {2, kUnbounded}, {TargetPattern::Kind::Shift, a, -1, {}}});
  g.add_rule({SymbolRef::Kind::Family, b, {1, kUnbounded}, {TargetPattern::Kind::Shift, a, 0, {}}});
  return g;
}

}  // namespace

TEST_CASE("index sets") {
  IndexSet s({{5, 9}, {1, 3}, {4, 4}});
  CHECK(s.ranges().size() == 1);
  CHECK(s.to_string() == "[1, 9]");
  CHECK(IndexSet::all_from(3).contains(1000000));
  CHECK_FALSE(IndexSet::all_from(3).contains(2));
  CHECK(IndexSet::all_from(1).intersect(IndexRange{2, 4}) == IndexSet({{2, 4}}));
  CHECK(IndexSet::all_from(2).preimage_of_shift(-1) == IndexSet::all_from(3));
  for (auto r : IndexSet::all_from(1).intersect(IndexRange{3, 7}).ranges()) CHECK(r == IndexRange{3, 7});
  CHECK(IndexRange{2, kUnbounded}.to_string() == "[2, inf)");
}

TEST_CASE("successors, edges and admissibility") {
  TransitionGraph g = sample();
  SymbolRef a1 = SymbolRef::member(0, 1), a2 = SymbolRef::member(0, 2), b5 = SymbolRef::member(1, 5);
  CHECK(g.has_edge(a1, b5));
  CHECK_FALSE(g.has_edge(a1, SymbolRef::member(1, 1)));
  CHECK(g.has_edge(a2, a1));
  CHECK(g.has_edge(b5, SymbolRef::member(0, 5)));
  SuccessorSet s = g.successors(a1);
  CHECK(s.finite.empty());
  REQUIRE(s.ranges.size() == 1);
  CHECK(s.ranges[0].second == IndexRange{2, kUnbounded});
  std::vector<SymbolRef> word{a1, SymbolRef::member(1, 2), a2, a1};
  CHECK(g.is_admissible(word));
  word.push_back(a2);
  CHECK_FALSE(g.is_admissible(word));
  CHECK(g.max_abs_shift() == 1);
}

TEST_CASE("names, display strings and parsing") {
  TransitionGraph g = sample();
  CHECK(g.name(SymbolRef::member(1, 12)) == "b_12");
  CHECK(g.display(SymbolRef::member(1, 12)) == "b₁₂");
  CHECK(subscript(305) == "₃₀₅");
  CHECK(g.parse_symbol("a_3") == SymbolRef::member(0, 3));
  CHECK(g.parse_symbol("z") == SymbolRef::concrete(0));
  CHECK_THROWS_AS(g.parse_symbol("c_1"), ParseError);
  CHECK_THROWS(g.parse_symbol("a_0"));
}

TEST_CASE("truncations and strongly connected components") {
  TransitionGraph g = sample();
  TruncatedGraph t = g.truncate(4);
  CHECK(t.nodes.size() == 9);
  auto comps = t.components();
  // {z} and the block of a_1..a_4, b_2..b_4; b_1 is transient.
  std::size_t big = 0;
  for (const auto& c : comps) big = std::max(big, c.size());
  CHECK(big == 7);
  TransitionGraph c = irreducible_component(g, SymbolRef::member(0, 1), 8);
  CHECK_FALSE(c.valid(SymbolRef::member(1, 1)));
  CHECK(c.valid(SymbolRef::member(1, 2)));
  CHECK_FALSE(c.find_concrete("z"));
  std::string dot = to_dot(c, 3);
  CHECK(dot.find("\"a_1\" -> \"b_3\"") != std::string::npos);
  CHECK(dot.find("\"b_1\"") == std::string::npos);
  std::string portrait = to_dot_portrait(g, false);
  CHECK(portrait.find("\"a_n\" -> \"b_n\"") != std::string::npos);
}

TEST_CASE("randomized: truncated adjacency agrees with has_edge") {
  TransitionGraph g = sample();
  std::mt19937_64 rng(61);
  for (long bound : {3L, 6L, 11L}) {
    TruncatedGraph t = g.truncate(bound);
    for (std::size_t u = 0; u < t.nodes.size(); ++u)
      for (std::size_t v = 0; v < t.nodes.size(); ++v) {
        bool edge = std::find(t.adj[u].begin(), t.adj[u].end(), v) != t.adj[u].end();
        CHECK(edge == g.has_edge(t.nodes[u], t.nodes[v]));
      }
  }
  for (int i = 0; i < 500; ++i) {
    long n = 1 + static_cast<long>(rng() % 50), m = 1 + static_cast<long>(rng() % 50);
    SymbolRef x = SymbolRef::member(rng() % 2, n), y = SymbolRef::member(rng() % 2, m);
    CHECK(g.has_edge(x, y) == g.successors(x).contains(y));
  }
}
