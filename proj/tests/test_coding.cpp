// Coding of points by itineraries and decoding of words.
#include <random>

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

std::vector<std::string> names(const PartitionModel& m, const std::vector<SymbolRef>& w) {
  std::vector<std::string> out;
  for (const auto& s : w) out.push_back(m.name(s));
  return out;
}

// Random admissible word of the given length inside the truncation at `bound`,
// starting from alpha_1.
std::vector<SymbolRef> random_path(const PartitionModel& m, std::mt19937_64& rng, std::size_t len, long bound) {
  TruncatedGraph t = m.graph.truncate(bound);
  std::size_t u = t.position.at(m.graph.parse_symbol("alpha_1"));
  std::vector<SymbolRef> w{t.nodes[u]};
  while (w.size() < len) {
    const auto& next = t.adj[u];
    if (next.empty()) break;
    u = next[rng() % next.size()];
    w.push_back(t.nodes[u]);
  }
  return w;
}

}  // namespace

TEST_CASE("codes of special points") {
  const PartitionModel& m = stock_model();
  RationalMap f = fixtures::stock_map();
  CodeSequence one = code_point(m, f, PadicNumber(1, 2), 5);
  CHECK(names(m, one.symbols) == std::vector<std::string>{"beta_inf", "alpha_inf", "alpha_inf", "alpha_inf", "alpha_inf"});
  CodeSequence four = code_point(m, f, PadicNumber(4, 2), 4);
  CHECK(names(m, four.symbols) == std::vector<std::string>{"alpha_1", "beta_3", "alpha_3", "alpha_2"});
  CHECK_THROWS_AS(code_point(m, f, PadicNumber(mpq_class(1, 3), 2), 5), LeftJuliaRegion);
  CHECK_THROWS_AS(code_point(m, f, PadicNumber(2, 2), 5), LeftJuliaRegion);
}

TEST_CASE("codes are admissible and conjugate f to the shift") {
  const PartitionModel& m = stock_model();
  RationalMap f = fixtures::stock_map();
  std::mt19937_64 rng(81);
  int coded = 0;
  for (int i = 0; i < 300 && coded < 40; ++i) {
    // Points of 4Z_2 and 1 + 4Z_2; many leave the Julia region and are skipped.
    PadicNumber x(fixtures::random_integer(rng, 30) * 4 + (rng() % 2), 2);
    try {
      CodeSequence c = code_point(m, f, x, 24);
      CodeSequence cf = code_point(m, f, f(x), 23);
      CHECK(m.graph.is_admissible(c.symbols));
      CHECK(std::vector<SymbolRef>(c.symbols.begin() + 1, c.symbols.end()) == cf.symbols);
      ++coded;
    } catch (const LeftJuliaRegion&) {
    }
  }
  CHECK(coded >= 10);
}

TEST_CASE("decoding exact and approximate words") {
  const PartitionModel& m = stock_model();
  RationalMap f = fixtures::stock_map();
  InfiniteWord to_one{{m.singleton_ref(1)}, {m.singleton_ref(0)}};
  DecodeResult d = decode_word(m, f, to_one, 40);
  CHECK(d.exact);
  CHECK(d.value == PadicNumber(1, 2));

  // f(x) = 1 has no rational root in A_1, so the answer is a ball.
  InfiniteWord via_a1{{m.graph.parse_symbol("alpha_1"), m.singleton_ref(1)}, {m.singleton_ref(0)}};
  DecodeResult e = decode_word(m, f, via_a1, 50);
  CHECK_FALSE(e.exact);
  CHECK(e.precision >= 50);
  CHECK(membership(e.value, m.disk_of(m.graph.parse_symbol("alpha_1"))));
  CHECK((f(e.value) - PadicNumber(1, 2)).valuation() >= Valuation(e.precision - 2));

  InfiniteWord bad{{m.graph.parse_symbol("alpha_3")}, {m.singleton_ref(0)}};
  CHECK_THROWS_AS(decode_word(m, f, bad, 20), InadmissibleWord);
}

TEST_CASE("randomized: decode then code reproduces periodic words") {
  const PartitionModel& m = stock_model();
  RationalMap f = fixtures::stock_map();
  std::mt19937_64 rng(82);
  int trips = 0;
  for (int i = 0; i < 60 && trips < 20; ++i) {
    std::vector<SymbolRef> path = random_path(m, rng, 3 + rng() % 10, 5);
    // Close the path into a cycle at alpha_1 when possible.
    auto back = std::find(path.begin() + 1, path.end(), path.front());
    if (back == path.end()) continue;
    InfiniteWord w{{}, std::vector<SymbolRef>(path.begin(), back)};
    DecodeResult d = decode_word(m, f, w, 120);
    CodeSequence c = code_point(m, f, d.value, 12);
    for (std::size_t k = 0; k < 12; ++k) CHECK(c.symbols[k] == w.at(k));
    ++trips;
  }
  CHECK(trips >= 5);
}
