// padic-julia: command-line front end.
//
//   padic-julia <analyze|partition|code|decode|entropy|graph|verify-paper>
//               --map f.json [--model m.json] [--point a/b] [--word w.json]
//               [--precision N] [--truncate N] [--length N] [--seed SYMBOL]
//               [--horizon N] [--full] [--format json|dot|table]
//
// Exit codes: 0 ok, 1 usage, 2 unsupported map, 3 horizon / budget
// exhausted, 4 verification failure.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "example_checks.hpp"
#include "padic/entropy.hpp"
#include "padic/errors.hpp"
#include "padic/local_analysis.hpp"
#include "padic/orbit.hpp"
#include "padic/partition.hpp"
#include "padic/serialize.hpp"

namespace {

using namespace padic;

enum Exit { kOk = 0, kUsage = 1, kUnsupported = 2, kUndetermined = 3, kVerification = 4 };

struct UsageError : Error {
  using Error::Error;
};
struct VerificationFailure : Error {
  using Error::Error;
};

struct RunConfig {
  std::string command;
  std::string map_path;
  std::string model_path;
  std::string point;
  std::string word_path;
  std::string seed;
  std::string format;
  long precision = 40;
  long truncate = -1;
  long length = 20;
  long horizon = -1;
  bool full = false;
};

std::string abs_text(const AbsValue& a, unsigned long p) { return a.to_string(p); }

// "a/b (2-adic ...d2 d1 d0)": exact form plus a digit rendering.
std::string render(const PadicNumber& x, std::size_t count = 24) {
  DigitExpansion e = digits(x, count);
  return x.to_string() + "  [digits " + e.to_string() + "]";
}

std::size_t horizon_from(const RunConfig& rc) {
  if (rc.horizon > 0) return static_cast<std::size_t>(rc.horizon);
  if (const char* env = std::getenv("PADIC_JULIA_HORIZON")) {
    std::string s(env);
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used == s.size() && v > 0) return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
    }
    throw UsageError("PADIC_JULIA_HORIZON must be a positive integer (got '" + s + "')");
  }
  return OrbitOptions{}.horizon;
}

void check_declared_critical_points(const MapConfig& cfg) {
  if (!cfg.critical_points) return;
  CriticalPointReport rep = rational_critical_points(cfg.map);
  auto listed = [&](const ProjectivePoint& x) {
    return std::find(cfg.critical_points->begin(), cfg.critical_points->end(), x) != cfg.critical_points->end();
  };
  for (const auto& x : *cfg.critical_points) {
    bool found = std::any_of(rep.points.begin(), rep.points.end(), [&](const CriticalPoint& c) { return c.location == x; });
    if (!found) throw VerificationFailure("declared critical point " + x.to_string() + " is not critical");
  }
  for (const auto& c : rep.points)
    if (!listed(c.location) && !c.location.is_infinity())
      throw VerificationFailure("critical point " + c.location.to_string() + " is missing from critical_points");
}

struct Session {
  RunConfig rc;
  MapConfig cfg;
  BuildOptions build;

  PartitionModel model() const {
    if (!rc.model_path.empty()) {
      PartitionModel m = model_from_json(read_json_file(rc.model_path), cfg.map);
      CompatibilityReport rep = check_compatibility(m, cfg.map, build);
      if (!rep.ok()) {
        std::string msg = "hand-authored model failed its compatibility checks:";
        for (const auto& f : rep.failures) msg += "\n  " + f.symbol + ": " + f.what;
        throw VerificationFailure(msg);
      }
      return m;
    }
    return build_partition(cfg.map, build);
  }
};

const char* kind_name(CriticalKind k) { return k == CriticalKind::Wild ? "wild" : "tame"; }

int cmd_analyze(const Session& s) {
  const RationalMap& f = s.cfg.map;
  CriticalPointReport crit = rational_critical_points(f);
  if (!crit.complete())
    throw UnsupportedMap("only " + std::to_string(crit.found) + " of " + std::to_string(crit.expected) +
                         " critical points (with multiplicity) are rational");
  BasinCertificates basins = certify_basins(f);
  std::vector<CriticalPoint> finite;
  for (const auto& c : crit.points)
    if (!c.location.is_infinity()) finite.push_back(c);
  OrbitReport orbits = critical_orbit_analysis(f, finite, basins, s.build.orbit);
  auto fixed = rational_fixed_points(f);

  Json j;
  j["map"] = f.to_string();
  j["prime"] = f.prime();
  Json fx = Json::array();
  for (const auto& x : fixed) {
    mpq_class mult = cycle_multiplier(f, {x});
    AbsValue a = AbsValue::from_valuation(rational_valuation(mult, f.prime()));
    std::string type = sgn(mult) == 0 ? "superattracting"
                       : a < AbsValue::from_exponent(0) ? "attracting"
                       : a == AbsValue::from_exponent(0) ? "indifferent"
                                                          : "repelling";
    fx.push_back({{"point", x.to_string()}, {"multiplier", format_rational(mult)},
                  {"multiplier_decimal", mult.get_d()}, {"abs_multiplier", abs_text(a, f.prime())}, {"type", type}});
  }
  j["fixed_points"] = fx;
  Json cp = Json::array();
  for (const auto& c : crit.points)
    cp.push_back({{"point", c.location.to_string()}, {"local_degree", c.local_degree}, {"kind", kind_name(c.kind)}});
  j["critical_points"] = cp;
  Json orb = Json::array();
  bool undetermined = false;
  for (const auto& o : orbits.orbits) {
    Json seq = Json::array();
    for (const auto& x : o.orbit) seq.push_back(x.to_string());
    Json e{{"critical_point", o.critical.location.to_string()}, {"fate", to_string(o.fate)}, {"orbit", seq}};
    if (o.fate == OrbitFate::Preperiodic) {
      e["period"] = o.period;
      e["cycle_type"] = to_string(o.cycle_type);
      e["multiplier"] = format_rational(o.multiplier);
      e["julia"] = o.julia();
      e["iteratedly_prefixed"] = o.iteratedly_prefixed();
    }
    if (o.fate == OrbitFate::Undetermined) undetermined = true;
    orb.push_back(e);
  }
  j["critical_orbits"] = orb;
  Json jc = Json::array();
  for (const auto* o : orbits.julia_critical()) jc.push_back(o->critical.location.to_string());
  j["julia_critical_points"] = jc;
  j["geometrically_finite"] = undetermined ? Json("undetermined") : Json(orbits.geometrically_finite());
  j["escape_certificate"] = basins.infinity_escape;
  Json inv = Json::array();
  for (const auto& d : basins.invariant_disks) inv.push_back({{"disk", d.disk.to_string()}, {"fixed_point", d.fixed_point.to_string()}});
  j["invariant_disks"] = inv;
  j["horizon"] = s.build.orbit.horizon;

  if (s.rc.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "map            " << f.to_string() << " over Q_" << f.prime() << "\n";
    std::cout << "fixed points\n";
    for (const auto& e : j["fixed_points"])
      std::cout << "  " << e["point"].get<std::string>() << "  multiplier " << e["multiplier"].get<std::string>() << " ("
                << e["multiplier_decimal"].get<double>() << "), |.| = " << e["abs_multiplier"].get<std::string>()
                << ", " << e["type"].get<std::string>() << "\n";
    std::cout << "critical points\n";
    for (const auto& e : j["critical_points"])
      std::cout << "  " << e["point"].get<std::string>() << "  local degree " << e["local_degree"].get<int>() << ", "
                << e["kind"].get<std::string>() << "\n";
    std::cout << "critical orbits\n";
    for (const auto& e : j["critical_orbits"]) {
      std::cout << "  " << e["critical_point"].get<std::string>() << ": ";
      for (std::size_t i = 0; i < e["orbit"].size(); ++i) std::cout << (i ? " -> " : "") << e["orbit"][i].get<std::string>();
      std::cout << "  [" << e["fate"].get<std::string>();
      if (e.contains("cycle_type"))
        std::cout << ", period " << e["period"].get<std::size_t>() << ", " << e["cycle_type"].get<std::string>()
                  << (e["julia"].get<bool>() ? ", in the Julia set" : ", in the Fatou set");
      std::cout << "]\n";
    }
    std::cout << "geometrically finite: " << (j["geometrically_finite"].is_boolean()
                                                   ? (j["geometrically_finite"].get<bool>() ? "yes" : "no")
                                                   : "undetermined")
              << "\n";
  }
  if (undetermined)
    throw Undetermined("a critical orbit is undetermined at horizon " + std::to_string(s.build.orbit.horizon));
  return kOk;
}

int cmd_partition(const Session& s) {
  PartitionModel m = s.model();
  if (s.rc.format == "dot") {
    std::cout << to_dot_portrait(m.graph);
  } else if (s.rc.format == "table") {
    std::cout << "singletons\n";
    for (const auto& x : m.singletons) std::cout << "  " << x.display << "  = {" << x.point.to_string() << "}\n";
    if (!m.isolated.empty()) std::cout << "isolated disks\n";
    for (const auto& x : m.isolated) std::cout << "  " << x.display << "  = " << x.disk.to_string() << "\n";
    std::cout << "families (n in domain)\n";
    for (const auto& f : m.families)
      std::cout << "  " << f.display << "_n = " << f.tmpl.center_string() << " + " << m.prime << "^(" << f.tmpl.radius().to_string()
                << ") Z, n in " << f.domain.to_string()
                << (f.ratio_exp ? ", v(f') = " + f.ratio_exp->to_string() : "") << "\n";
    std::cout << "Julia region\n";
    for (const auto& d : m.julia_region) std::cout << "  " << d.to_string() << "\n";
    std::cout << "transitions\n" << to_dot_portrait(m.graph, true);
    for (const auto& n : m.notes) std::cout << "note: " << n << "\n";
  } else {
    std::cout << model_to_json(m).dump(2) << "\n";
  }
  return kOk;
}

int cmd_code(const Session& s) {
  if (s.rc.point.empty()) throw UsageError("code needs --point a/b");
  PartitionModel m = s.model();
  PadicNumber x = PadicNumber::parse(s.rc.point, s.cfg.map.prime());
  std::size_t len = static_cast<std::size_t>(s.rc.length);
  CodeSequence c;
  try {
    c = code_point(m, s.cfg.map, x, len);
  } catch (const LeftJuliaRegion& e) {
    BasinCertificates basins = certify_basins(s.cfg.map);
    FatouCertificate cert = fatou_certificate(s.cfg.map, basins, ProjectivePoint(x), s.build.orbit);
    throw VerificationFailure(std::string(e.what()) + " (Fatou certificate: " + to_string(cert.kind) + " at step " +
                              std::to_string(cert.step) + ")");
  }
  if (s.rc.format == "json") {
    Json names = Json::array(), disp = Json::array();
    for (const auto& sym : c.symbols) {
      names.push_back(m.name(sym));
      disp.push_back(m.display(sym));
    }
    std::cout << Json{{"point", x.to_string()}, {"length", len}, {"symbols", names}, {"display", disp},
                      {"exact_steps", c.exact_steps}}
                     .dump(2)
              << "\n";
  } else {
    for (std::size_t i = 0; i < c.symbols.size(); ++i) std::cout << (i ? " " : "") << m.display(c.symbols[i]);
    std::cout << " …\n";
  }
  return kOk;
}

int cmd_decode(const Session& s) {
  if (s.rc.word_path.empty()) throw UsageError("decode needs --word w.json");
  PartitionModel m = s.model();
  InfiniteWord w = word_from_json(read_json_file(s.rc.word_path), m.graph);
  DecodeResult d = decode_word(m, s.cfg.map, w, s.rc.precision);
  if (s.rc.format == "json") {
    Json j = word_to_json(w, m.graph);
    j["value"] = d.value.to_string();
    j["digits"] = digits(d.value, 32).to_string();
    j["exact"] = d.exact;
    if (!d.exact) j["precision"] = d.precision;
    j["symbols_used"] = d.symbols_used;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (d.exact ? "x = " : "x in ") << render(d.value)
              << (d.exact ? "" : " + " + std::to_string(m.prime) + "^" + std::to_string(d.precision) + " Z") << "\n";
  }
  return kOk;
}

// Seed of the strongly connected block with the largest spectral radius on
// the truncation at `bound` (first node in index order on ties).
SymbolRef auto_seed(const TransitionGraph& g, long bound) {
  TruncatedGraph t = g.truncate(bound);
  double best = -1;
  std::optional<SymbolRef> seed;
  for (const auto& comp : t.components()) {
    bool cyclic = comp.size() > 1;
    if (!cyclic)
      for (auto w : t.adj[comp.front()]) cyclic = cyclic || w == comp.front();
    if (!cyclic) continue;
    std::size_t first = *std::min_element(comp.begin(), comp.end());
    TransitionGraph c = irreducible_component(g, t.nodes[first], bound);
    double rho = truncated_perron(c, bound).value;
    if (rho > best + 1e-9) {
      best = rho;
      seed = t.nodes[first];
    }
  }
  if (!seed) throw VerificationFailure("the transition graph has no cycles (zero entropy, empty loop census)");
  return *seed;
}

int cmd_entropy(const Session& s) {
  PartitionModel m = s.model();
  SymbolRef seed = s.rc.seed.empty() ? auto_seed(m.graph, 16) : m.graph.parse_symbol(s.rc.seed);
  long len = s.rc.length > 0 ? std::max<long>(s.rc.length, 32) : 48;
  LoopCensus census = first_return_census(m.graph, seed, len);
  EntropyResult e = gurevich_entropy(census);
  if (s.rc.format == "table") {
    std::cout << "base       " << m.display(seed) << "\n";
    std::cout << "delta(n)   ";
    for (long n = 1; n <= std::min<long>(census.length(), 16); ++n) std::cout << census.delta(n) << " ";
    std::cout << "...\n";
    if (census.tail) std::cout << "tail       " << census.tail->to_string() << "\n";
    std::cout << "R          [" << format_rational(e.R_lo) << ", " << format_rational(e.R_hi) << "]\n";
    std::cout.precision(15);
    std::cout << "           ~ [" << e.R_lo.get_d() << ", " << e.R_hi.get_d() << "]\n";
    std::cout << "h = -ln R  [" << e.h_lo << ", " << e.h_hi << "]\n";
    std::cout << "method     " << to_string(e.method) << "\n";
  } else {
    Json j = entropy_to_json(e);
    j["base"] = m.name(seed);
    j["census"] = census_to_json(census, m.graph);
    std::cout << j.dump(2) << "\n";
  }
  return kOk;
}

int cmd_graph(const Session& s) {
  PartitionModel m = s.model();
  const bool truncated = s.rc.truncate > 0;
  TransitionGraph g = m.graph;
  if (!s.rc.full && (truncated || !s.rc.seed.empty())) {
    long bound = std::max<long>(16, s.rc.truncate);
    SymbolRef seed = s.rc.seed.empty() ? auto_seed(g, 16) : g.parse_symbol(s.rc.seed);
    g = irreducible_component(m.graph, seed, bound);
  }
  if (s.rc.format == "json") {
    std::cout << graph_to_json(g).dump(2) << "\n";
  } else if (s.rc.format == "table") {
    long bound = truncated ? s.rc.truncate : 5;
    TruncatedGraph t = g.truncate(bound);
    for (std::size_t u = 0; u < t.nodes.size(); ++u) {
      std::cout << g.display(t.nodes[u]) << " ->";
      for (auto v : t.adj[u]) std::cout << " " << g.display(t.nodes[v]);
      std::cout << "\n";
    }
  } else {
    std::cout << (truncated ? to_dot(g, s.rc.truncate) : to_dot_portrait(g));
  }
  return kOk;
}

int cmd_verify(const Session& s) {
  std::optional<PartitionModel> model;
  if (!s.rc.model_path.empty()) model = s.model();
  checks::CheckContext ctx = checks::make_context(s.cfg.map, std::move(model));
  std::vector<checks::CheckResult> results = checks::run_all(ctx);
  bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  if (s.rc.format == "json") {
    Json a = Json::array();
    for (const auto& r : results)
      a.push_back({{"id", r.id}, {"claim", r.claim}, {"computed", r.computed}, {"expected", r.expected},
                   {"status", r.pass ? "PASS" : "FAIL"}, {"seconds", r.seconds}});
    std::cout << Json{{"all_pass", all}, {"checks", a}}.dump(2) << "\n";
  } else {
    std::cout << checks::format_table(results);
    long passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.pass; });
    std::cout << passed << " of " << results.size() << " claims reproduced\n";
  }
  return all ? kOk : kVerification;
}

int run(const RunConfig& rc) {
  Session s{rc, load_map_config(rc.map_path), {}};
  s.build.orbit.horizon = horizon_from(rc);
  check_declared_critical_points(s.cfg);
  if (rc.command == "analyze") return cmd_analyze(s);
  if (rc.command == "partition") return cmd_partition(s);
  if (rc.command == "code") return cmd_code(s);
  if (rc.command == "decode") return cmd_decode(s);
  if (rc.command == "entropy") return cmd_entropy(s);
  if (rc.command == "graph") return cmd_graph(s);
  return cmd_verify(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic Julia sets of geometrically finite maps: partitions, codings and entropy"};
  RunConfig rc;
  app.add_option("command", rc.command, "analyze | partition | code | decode | entropy | graph | verify-paper")
      ->required()
      ->check(CLI::IsMember({"analyze", "partition", "code", "decode", "entropy", "graph", "verify-paper"}));
  app.add_option("--map", rc.map_path, "map configuration (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--model", rc.model_path, "hand-authored partition model (JSON); checked before use")
      ->check(CLI::ExistingFile);
  app.add_option("--point", rc.point, "rational point a/b (code)");
  app.add_option("--word", rc.word_path, "infinite word {prefix, period} (decode)")->check(CLI::ExistingFile);
  app.add_option("--precision", rc.precision, "decode precision: radius exponent of the answer")
      ->check(CLI::Range(1L, 100000L));
  app.add_option("--truncate", rc.truncate, "index bound for graph truncations")->check(CLI::Range(1L, 10000L));
  app.add_option("--length", rc.length, "code length / loop census length")->check(CLI::Range(1L, 100000L));
  app.add_option("--seed", rc.seed, "base symbol for entropy and components (e.g. alpha_1)");
  app.add_option("--horizon", rc.horizon, "iteration horizon (overrides PADIC_JULIA_HORIZON)")
      ->check(CLI::Range(1L, 1000000000L));
  app.add_flag("--full", rc.full, "graph: keep the whole graph instead of the main irreducible component");
  app.add_option("--format", rc.format, "json | dot | table")->check(CLI::IsMember({"json", "dot", "table"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (rc.format.empty()) {
    if (rc.command == "graph")
      rc.format = "dot";
    else if (rc.command == "partition" || rc.command == "entropy" || rc.command == "decode")
      rc.format = "json";
    else
      rc.format = "table";
  }
  try {
    return run(rc);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const InadmissibleWord& e) {
    std::cerr << "inadmissible word: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedMap& e) {
    std::cerr << "unsupported map: " << e.what() << "\n";
    return kUnsupported;
  } catch (const Undetermined& e) {
    std::cerr << "undetermined: " << e.what() << "\n";
    return kUndetermined;
  } catch (const Undecided& e) {
    std::cerr << "undetermined: " << e.what() << "\n";
    return kUndetermined;
  } catch (const InsufficientLength& e) {
    std::cerr << "undetermined: " << e.what() << "\n";
    return kUndetermined;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kVerification;
  } catch (const CompatibilityError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kVerification;
  } catch (const LeftJuliaRegion& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerification;
  }
}
