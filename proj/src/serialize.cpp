#include "padic/serialize.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "padic/errors.hpp"
#include "padic/local_analysis.hpp"

namespace padic {

namespace {

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.contains(k)) throw ParseError(what + ": unknown field '" + k + "'");
}

const Json& required(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw ParseError(what + ": missing field '" + key + "'");
  return j.at(key);
}

// Coefficients may be given as strings ("9/4") or integers.
mpq_class rational_from(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return mpq_class(v.get<long>());
  throw ParseError("expected a rational as a string or an integer");
}

Polynomial polynomial_from(const Json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) throw ParseError(what + " must be a non-empty array of coefficients");
  std::vector<mpq_class> c;
  for (const auto& x : v) c.push_back(rational_from(x));
  return Polynomial(std::move(c));
}

Json polynomial_to(const Polynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(format_rational(c));
  if (a.empty()) a.push_back("0");
  return a;
}

std::string str(const Json& v, const std::string& what) {
  if (!v.is_string()) throw ParseError(what + " must be a string");
  return v.get<std::string>();
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

MapConfig map_config_from_json(const Json& j) {
  const std::string what = "map config";
  reject_unknown(j, {"prime", "numerator", "denominator", "critical_points", "name"}, what);
  const Json& pj = required(j, "prime", what);
  if (!pj.is_number_unsigned() || !is_prime(pj.get<unsigned long>())) throw ParseError("prime must be a prime number");
  unsigned long p = pj.get<unsigned long>();
  Polynomial num = polynomial_from(required(j, "numerator", what), "numerator");
  Polynomial den = j.contains("denominator") ? polynomial_from(j.at("denominator"), "denominator") : Polynomial::constant(1);
  if (den.is_zero()) throw ParseError("denominator is zero");
  MapConfig c{j.contains("name") ? str(j.at("name"), "name") : std::string(), RationalMap(num, den, p), std::nullopt};
  if (j.contains("critical_points")) {
    const Json& cp = j.at("critical_points");
    if (!cp.is_array()) throw ParseError("critical_points must be an array");
    std::vector<ProjectivePoint> pts;
    for (const auto& x : cp) pts.push_back(ProjectivePoint::parse(str(x, "critical point"), p));
    c.critical_points = std::move(pts);
  }
  return c;
}

Json map_config_to_json(const MapConfig& c) {
  Json j;
  if (!c.name.empty()) j["name"] = c.name;
  j["prime"] = c.map.prime();
  j["numerator"] = polynomial_to(c.map.numerator());
  j["denominator"] = polynomial_to(c.map.denominator());
  if (c.critical_points) {
    Json a = Json::array();
    for (const auto& x : *c.critical_points) a.push_back(x.to_string());
    j["critical_points"] = a;
  }
  return j;
}

MapConfig load_map_config(const std::string& path) { return map_config_from_json(read_json_file(path)); }

Json index_range_to_json(const IndexRange& r) {
  return Json::array({r.lo, r.unbounded() ? Json(nullptr) : Json(r.hi)});
}

IndexRange index_range_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer())
    throw ParseError("index range must be [lo, hi] with hi an integer or null");
  IndexRange r{j[0].get<long>(), kUnbounded};
  if (!j[1].is_null()) {
    if (!j[1].is_number_integer()) throw ParseError("index range upper end must be an integer or null");
    r.hi = j[1].get<long>();
  }
  if (r.empty()) throw ParseError("empty index range");
  return r;
}

namespace {

Json index_set_to_json(const IndexSet& s) {
  Json a = Json::array();
  for (const auto& r : s.ranges()) a.push_back(index_range_to_json(r));
  return a;
}

IndexSet index_set_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("domain must be an array of index ranges");
  std::vector<IndexRange> rs;
  for (const auto& r : j) rs.push_back(index_range_from_json(r));
  return IndexSet(std::move(rs));
}

std::string concrete_name(const TransitionGraph& g, std::size_t id) { return g.concrete().at(id).name; }
std::string family_name(const TransitionGraph& g, std::size_t id) { return g.families().at(id).name; }

Json rules_to_json(const TransitionGraph& g) {
  Json a = Json::array();
  for (const auto& r : g.rules()) {
    Json e;
    if (r.source_kind == SymbolRef::Kind::Concrete) {
      e["source"] = concrete_name(g, r.source_id);
    } else {
      e["source"] = family_name(g, r.source_id);
      e["source_range"] = index_range_to_json(r.source_range);
    }
    Json t;
    switch (r.target.kind) {
      case TargetPattern::Kind::Concrete:
        t["concrete"] = concrete_name(g, r.target.id);
        break;
      case TargetPattern::Kind::Shift:
        t["family"] = family_name(g, r.target.id);
        t["shift"] = r.target.shift;
        break;
      case TargetPattern::Kind::Range:
        t["family"] = family_name(g, r.target.id);
        t["range"] = index_range_to_json(r.target.range);
        break;
    }
    e["target"] = t;
    a.push_back(e);
  }
  return a;
}

void rules_from_json(TransitionGraph& g, const Json& a) {
  if (!a.is_array()) throw ParseError("transitions must be an array");
  auto family = [&](const Json& v) {
    auto id = g.find_family(str(v, "family name"));
    if (!id) throw ParseError("unknown family '" + v.get<std::string>() + "'");
    return *id;
  };
  auto concrete = [&](const Json& v) {
    auto id = g.find_concrete(str(v, "symbol name"));
    if (!id) throw ParseError("unknown symbol '" + v.get<std::string>() + "'");
    return *id;
  };
  for (const auto& e : a) {
    reject_unknown(e, {"source", "source_range", "target"}, "transition");
    EdgeRule r;
    const Json& src = required(e, "source", "transition");
    if (e.contains("source_range")) {
      r.source_kind = SymbolRef::Kind::Family;
      r.source_id = family(src);
      r.source_range = index_range_from_json(e.at("source_range"));
    } else {
      r.source_kind = SymbolRef::Kind::Concrete;
      r.source_id = concrete(src);
    }
    const Json& t = required(e, "target", "transition");
    reject_unknown(t, {"concrete", "family", "shift", "range"}, "transition target");
    if (t.contains("concrete")) {
      r.target = {TargetPattern::Kind::Concrete, concrete(t.at("concrete")), 0, {}};
    } else if (t.contains("family") && t.contains("shift") && !t.contains("range")) {
      if (!t.at("shift").is_number_integer()) throw ParseError("shift must be an integer");
      r.target = {TargetPattern::Kind::Shift, family(t.at("family")), t.at("shift").get<long>(), {}};
    } else if (t.contains("family") && t.contains("range") && !t.contains("shift")) {
      r.target = {TargetPattern::Kind::Range, family(t.at("family")), 0, index_range_from_json(t.at("range"))};
    } else {
      throw ParseError("transition target needs 'concrete', or 'family' with exactly one of 'shift'/'range'");
    }
    g.add_rule(r);
  }
}

}  // namespace

Json graph_to_json(const TransitionGraph& g) {
  Json j;
  Json c = Json::array();
  for (const auto& n : g.concrete()) c.push_back({{"name", n.name}, {"display", n.display}});
  Json f = Json::array();
  for (const auto& n : g.families())
    f.push_back({{"name", n.name}, {"display", n.display}, {"domain", index_set_to_json(n.domain)}});
  j["concrete"] = c;
  j["families"] = f;
  j["transitions"] = rules_to_json(g);
  return j;
}

TransitionGraph graph_from_json(const Json& j) {
  reject_unknown(j, {"concrete", "families", "transitions"}, "graph");
  TransitionGraph g;
  for (const auto& n : required(j, "concrete", "graph")) {
    reject_unknown(n, {"name", "display"}, "graph node");
    std::string name = str(required(n, "name", "graph node"), "name");
    g.add_concrete(name, n.contains("display") ? str(n.at("display"), "display") : name);
  }
  for (const auto& n : required(j, "families", "graph")) {
    reject_unknown(n, {"name", "display", "domain"}, "graph family");
    std::string name = str(required(n, "name", "graph family"), "name");
    g.add_family(name, n.contains("display") ? str(n.at("display"), "display") : name,
                 n.contains("domain") ? index_set_from_json(n.at("domain")) : IndexSet::all_from(1));
  }
  rules_from_json(g, required(j, "transitions", "graph"));
  return g;
}

Json model_to_json(const PartitionModel& m) {
  Json j;
  j["prime"] = m.prime;
  j["iterate"] = m.iterate;
  Json s = Json::array();
  for (const auto& x : m.singletons)
    s.push_back({{"name", x.name}, {"display", x.display}, {"point", x.point.to_string()}});
  j["singletons"] = s;
  Json iso = Json::array();
  for (const auto& x : m.isolated)
    iso.push_back({{"name", x.name}, {"display", x.display}, {"disk", x.disk.to_string()}});
  j["isolated"] = iso;
  Json fams = Json::array();
  for (const auto& f : m.families) {
    Json e{{"name", f.name},
           {"display", f.display},
           {"center", f.tmpl.center_string()},
           {"radius", f.tmpl.radius().to_string()},
           {"domain", index_set_to_json(f.domain)}};
    if (f.ratio_exp) e["ratio_exp"] = f.ratio_exp->to_string();
    fams.push_back(e);
  }
  j["families"] = fams;
  Json region = Json::array();
  for (const auto& d : m.julia_region) region.push_back(d.to_string());
  j["julia_region"] = region;
  j["transitions"] = rules_to_json(m.graph);
  if (!m.notes.empty()) j["notes"] = m.notes;
  return j;
}

PartitionModel model_from_json(const Json& j, const RationalMap& f) {
  const std::string what = "partition model";
  reject_unknown(j, {"prime", "iterate", "singletons", "isolated", "families", "julia_region", "transitions", "notes"},
                 what);
  PartitionModel m;
  const Json& pj = required(j, "prime", what);
  if (!pj.is_number_unsigned()) throw ParseError("prime must be a positive integer");
  m.prime = pj.get<unsigned long>();
  if (m.prime != f.prime()) throw ParseError("model prime differs from the map's prime");
  if (j.contains("iterate")) {
    if (!j.at("iterate").is_number_unsigned() || j.at("iterate").get<unsigned>() == 0)
      throw ParseError("iterate must be a positive integer");
    m.iterate = j.at("iterate").get<unsigned>();
  }
  const unsigned long p = m.prime;
  if (j.contains("singletons"))
    for (const auto& x : j.at("singletons")) {
      reject_unknown(x, {"name", "display", "point"}, "singleton");
      std::string name = str(required(x, "name", "singleton"), "name");
      m.singletons.push_back({name, x.contains("display") ? str(x.at("display"), "display") : name,
                              ProjectivePoint::parse(str(required(x, "point", "singleton"), "point"), p)});
    }
  if (j.contains("isolated"))
    for (const auto& x : j.at("isolated")) {
      reject_unknown(x, {"name", "display", "disk"}, "isolated disk");
      std::string name = str(required(x, "name", "isolated disk"), "name");
      Disk d = Disk::parse(str(required(x, "disk", "isolated disk"), "disk"), p);
      if (!d.is_ball()) throw ParseError("isolated symbol '" + name + "' must be a ball");
      m.isolated.push_back({name, x.contains("display") ? str(x.at("display"), "display") : name, d});
    }
  if (j.contains("families"))
    for (const auto& x : j.at("families")) {
      reject_unknown(x, {"name", "display", "center", "radius", "domain", "ratio_exp"}, "family");
      FamilySymbol fs;
      fs.name = str(required(x, "name", "family"), "name");
      fs.display = x.contains("display") ? str(x.at("display"), "display") : fs.name;
      fs.tmpl = FamilyTemplate::parse(str(required(x, "center", "family"), "center"),
                                      str(required(x, "radius", "family"), "radius"), p);
      if (x.contains("domain")) fs.domain = index_set_from_json(x.at("domain"));
      if (x.contains("ratio_exp")) fs.ratio_exp = AffineForm::parse(str(x.at("ratio_exp"), "ratio_exp"));
      m.families.push_back(std::move(fs));
    }
  if (j.contains("julia_region"))
    for (const auto& x : j.at("julia_region")) m.julia_region.push_back(Disk::parse(str(x, "julia_region entry"), p));
  if (j.contains("notes"))
    for (const auto& x : j.at("notes")) m.notes.push_back(str(x, "note"));
  m.basins = certify_basins(partition_map(m, f));
  m.rebuild_nodes();
  if (j.contains("transitions")) rules_from_json(m.graph, j.at("transitions"));
  return m;
}

Json entropy_to_json(const EntropyResult& r) {
  Json j;
  j["R_lo"] = format_rational(r.R_lo);
  j["R_hi"] = format_rational(r.R_hi);
  j["h_lo"] = r.h_lo;
  j["h_hi"] = r.h_hi;
  j["method"] = to_string(r.method);
  j["R_lo_decimal"] = r.R_lo.get_d();
  j["R_hi_decimal"] = r.R_hi.get_d();
  if (!r.characteristic.empty()) {
    Json c = Json::array();
    for (const auto& x : r.characteristic) c.push_back(x.get_str());
    j["characteristic"] = c;
  }
  if (!r.assumptions.empty()) j["assumptions"] = r.assumptions;
  return j;
}

EntropyResult entropy_from_json(const Json& j) {
  reject_unknown(j, {"R_lo", "R_hi", "h_lo", "h_hi", "method", "R_lo_decimal", "R_hi_decimal", "characteristic",
                     "assumptions"},
                 "entropy report");
  EntropyResult r;
  r.R_lo = parse_rational(str(required(j, "R_lo", "entropy report"), "R_lo"));
  r.R_hi = parse_rational(str(required(j, "R_hi", "entropy report"), "R_hi"));
  r.h_lo = required(j, "h_lo", "entropy report").get<double>();
  r.h_hi = required(j, "h_hi", "entropy report").get<double>();
  std::string m = str(required(j, "method", "entropy report"), "method");
  if (m == "closed-form")
    r.method = EntropyMethod::ClosedForm;
  else if (m == "truncation-bracket")
    r.method = EntropyMethod::TruncationBracket;
  else
    throw ParseError("unknown entropy method '" + m + "'");
  if (j.contains("characteristic"))
    for (const auto& x : j.at("characteristic")) r.characteristic.push_back(mpz_class(str(x, "coefficient")));
  if (j.contains("assumptions"))
    for (const auto& x : j.at("assumptions")) r.assumptions.push_back(str(x, "assumption"));
  return r;
}

Json census_to_json(const LoopCensus& c, const TransitionGraph& g) {
  Json j;
  j["base"] = g.name(c.base);
  Json counts = Json::array();
  for (const auto& x : c.counts) counts.push_back(x.get_str());
  j["delta"] = counts;
  j["index_bound"] = c.index_bound;
  if (c.tail) {
    Json vals = Json::array();
    for (const auto& x : c.tail->values) vals.push_back(x.get_str());
    j["tail"] = {{"start", c.tail->start}, {"values", vals}, {"text", c.tail->to_string()}};
  } else {
    j["tail"] = nullptr;
  }
  return j;
}

Json word_to_json(const InfiniteWord& w, const TransitionGraph& g) {
  Json pre = Json::array(), per = Json::array();
  for (const auto& s : w.prefix) pre.push_back(g.name(s));
  for (const auto& s : w.period) per.push_back(g.name(s));
  return {{"prefix", pre}, {"period", per}};
}

InfiniteWord word_from_json(const Json& j, const TransitionGraph& g) {
  reject_unknown(j, {"prefix", "period"}, "word");
  InfiniteWord w;
  if (j.contains("prefix"))
    for (const auto& s : j.at("prefix")) w.prefix.push_back(g.parse_symbol(str(s, "symbol")));
  for (const auto& s : required(j, "period", "word")) w.period.push_back(g.parse_symbol(str(s, "symbol")));
  if (w.period.empty()) throw ParseError("word period must be non-empty");
  return w;
}

}  // namespace padic
