#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "padic/errors.hpp"
#include "padic/serialize.hpp"

using namespace padic;

namespace {

const std::string kData = PADIC_JULIA_DATA_DIR;

bool same_graph(const TransitionGraph& a, const TransitionGraph& b) {
  if (a.rules() != b.rules() || a.concrete().size() != b.concrete().size() || a.families().size() != b.families().size())
    return false;
  for (std::size_t i = 0; i < a.concrete().size(); ++i)
    if (a.concrete()[i].name != b.concrete()[i].name || a.concrete()[i].display != b.concrete()[i].display) return false;
  for (std::size_t i = 0; i < a.families().size(); ++i)
    if (a.families()[i].name != b.families()[i].name || !(a.families()[i].domain == b.families()[i].domain)) return false;
  return true;
}

}  // namespace

TEST_CASE("map configurations") {
  MapConfig c = load_map_config(kData + "/f.json");
  CHECK(c.map.prime() == 2);
  CHECK(c.map.numerator() == fixtures::stock_map().numerator());
  REQUIRE(c.critical_points);
  CHECK(c.critical_points->size() == 2);
  MapConfig back = map_config_from_json(map_config_to_json(c));
  CHECK(back.name == c.name);
  CHECK(back.map.numerator() == c.map.numerator());
  CHECK(back.map.denominator() == c.map.denominator());
  CHECK(*back.critical_points == *c.critical_points);

  Json bad = map_config_to_json(c);
  bad["colour"] = "blue";
  CHECK_THROWS_AS(map_config_from_json(bad), ParseError);
  Json no_prime = map_config_to_json(c);
  no_prime.erase("prime");
  CHECK_THROWS_AS(map_config_from_json(no_prime), ParseError);
  Json composite = map_config_to_json(c);
  composite["prime"] = 6;
  CHECK_THROWS_AS(map_config_from_json(composite), Error);
  CHECK_THROWS_AS(read_json_file(kData + "/does-not-exist.json"), Error);
}

TEST_CASE("partition models round-trip") {
  RationalMap f = fixtures::stock_map();
  PartitionModel m = build_partition(f);
  Json j = model_to_json(m);
  PartitionModel back = model_from_json(j, f);
  CHECK(same_graph(back.graph, m.graph));
  REQUIRE(back.families.size() == m.families.size());
  for (std::size_t i = 0; i < m.families.size(); ++i) {
    CHECK(back.families[i].tmpl == m.families[i].tmpl);
    CHECK(back.families[i].ratio_exp == m.families[i].ratio_exp);
  }
  CHECK(back.julia_region == m.julia_region);
  CHECK(model_to_json(back) == j);
  CHECK(check_compatibility(back, f).ok());
}

TEST_CASE("hand-authored models from disk") {
  RationalMap f = fixtures::stock_map();
  PartitionModel good = model_from_json(read_json_file(kData + "/f_model.json"), f);
  CHECK(check_compatibility(good, f).ok());
  PartitionModel wrong = model_from_json(read_json_file(kData + "/f_model_wrong.json"), f);
  CompatibilityReport r = check_compatibility(wrong, f);
  REQUIRE_FALSE(r.ok());
  CHECK(r.failures.front().symbol.rfind("beta", 0) == 0);

  Json j = read_json_file(kData + "/f_model.json");
  j["transitions"][0]["target"] = Json{{"concrete", "gamma_inf"}};
  CHECK_THROWS_AS(model_from_json(j, f), Error);
}

TEST_CASE("entropy reports round-trip") {
  EntropyResult r;
  r.R_lo = mpq_class("2532976343/4294967296");
  r.R_hi = mpq_class("648441943809/1099511627776");
  r.h_lo = 0.528048909512729;
  r.h_hi = 0.528048909514272;
  r.characteristic = {-1, 1, 0, 2};
  r.assumptions = {"tail recognized"};
  EntropyResult back = entropy_from_json(entropy_to_json(r));
  CHECK(back.R_lo == r.R_lo);
  CHECK(back.R_hi == r.R_hi);
  CHECK(back.h_lo == r.h_lo);
  CHECK(back.h_hi == r.h_hi);
  CHECK(back.method == r.method);
  CHECK(back.characteristic == r.characteristic);
  CHECK(back.assumptions == r.assumptions);
}

TEST_CASE("words and index ranges") {
  PartitionModel m = build_partition(fixtures::stock_map());
  InfiniteWord w = word_from_json(read_json_file(kData + "/word_x4.json"), m.graph);
  CHECK(m.name(w.prefix.front()) == "alpha_1");
  CHECK(w.period.size() == 3);
  InfiniteWord back = word_from_json(word_to_json(w, m.graph), m.graph);
  CHECK(back.prefix == w.prefix);
  CHECK(back.period == w.period);
  CHECK_THROWS_AS(word_from_json(Json{{"prefix", Json::array()}, {"period", {"omega_2"}}}, m.graph), Error);
  CHECK_THROWS_AS(word_from_json(Json{{"prefix", {"alpha_1"}}}, m.graph), ParseError);

  for (IndexRange r : {IndexRange{1, 1}, IndexRange{2, kUnbounded}, IndexRange{3, 17}})
    CHECK(index_range_from_json(index_range_to_json(r)) == r);
  CHECK(index_range_to_json(IndexRange{2, kUnbounded}).dump() == "[2,null]");
}

TEST_CASE("randomized graphs round-trip") {
  std::mt19937_64 rng(91);
  for (int i = 0; i < 50; ++i) {
    TransitionGraph g;
    std::size_t nc = 1 + rng() % 3, nf = 1 + rng() % 3;
    for (std::size_t k = 0; k < nc; ++k) g.add_concrete("c" + std::to_string(k), "c" + std::to_string(k));
    for (std::size_t k = 0; k < nf; ++k)
      g.add_family("f" + std::to_string(k), "φ" + std::to_string(k), IndexSet::all_from(1 + static_cast<long>(rng() % 2)));
    for (int e = 0; e < 6; ++e) {
      EdgeRule r;
      bool from_family = rng() % 2;
      r.source_kind = from_family ? SymbolRef::Kind::Family : SymbolRef::Kind::Concrete;
      r.source_id = from_family ? rng() % nf : rng() % nc;
      if (from_family) r.source_range = {3, rng() % 2 ? kUnbounded : 9};
      switch (rng() % 3) {
        case 0: r.target = {TargetPattern::Kind::Concrete, rng() % nc, 0, {}}; break;
        case 1: r.target = {TargetPattern::Kind::Shift, rng() % nf, static_cast<long>(rng() % 3) - 1, {}}; break;
        default: r.target = {TargetPattern::Kind::Range, rng() % nf, 0, {2, rng() % 2 ? kUnbounded : 5}}; break;
      }
      if (!from_family && r.target.kind == TargetPattern::Kind::Shift) continue;
      g.add_rule(r);
    }
    TransitionGraph back = graph_from_json(graph_to_json(g));
    CHECK(same_graph(back, g));
  }
}
