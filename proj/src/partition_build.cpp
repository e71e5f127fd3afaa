// Automatic construction of the Markov partition for polynomial maps whose
// Julia critical points land on repelling fixed points.
//
// 1. Refine Z_p into a finite tree of balls down to a fixed depth around the
//    special points (forward orbits of Julia critical points).  Leaves are
//    certified Fatou balls, scaling balls ("elements"), or the deepest balls
//    around special points ("cores").
// 2. Markov closure: an element whose image lies strictly inside another
//    element splits that element; an element whose image is Fatou is Fatou.
// 3. Around every special point z the leaves with v(x - z) = l form a
//    "level signature".  The signatures are eventually periodic in l; each
//    periodic element becomes an indexed family, the rest are isolated disks.
// 4. Transitions are read off the images and checked, symbolically in n where
//    the image of a member is a single member.
#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

#include "padic/errors.hpp"
#include "padic/local_analysis.hpp"
#include "padic/partition.hpp"

namespace padic {

namespace {

enum class Leaf { Internal, Element, Fatou, Core };

Disk scaling_image(const RationalMap& g, const Disk& ball) {
  long v1 = scaling_ratio_valuation(g, ball);
  return Disk::closed_ball(g(ball.center()), ball.radius_exp() + v1);
}

class Refinement {
 public:
  Refinement(const RationalMap& f, const BasinCertificates& basins, std::vector<PadicNumber> specials,
             std::vector<PadicNumber> crits, long depth)
      : f_(f), basins_(basins), specials_(std::move(specials)), crits_(std::move(crits)), depth_(depth),
        root_(Disk::integers(f.prime())) {}

  void build() { classify(root_); }

  void close() {
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<Disk> elements;
      for (const auto& [d, k] : nodes_)
        if (k == Leaf::Element) elements.push_back(d);
      std::sort(elements.begin(), elements.end(), by_position);
      for (const auto& E : elements) {
        if (nodes_.at(E) != Leaf::Element) continue;
        Disk I = scaling_image(f_, E);
        if (disjoint(I, root_)) {
          nodes_[E] = Leaf::Fatou;
          changed = true;
          continue;
        }
        if (contains(I, root_)) continue;
        Disk N = locate(I);
        if (N == I) {
          if (all_fatou(N)) {
            nodes_[E] = Leaf::Fatou;
            changed = true;
          }
          continue;
        }
        switch (nodes_.at(N)) {
          case Leaf::Fatou:
            nodes_[E] = Leaf::Fatou;
            changed = true;
            break;
          case Leaf::Element:
            nodes_[N] = Leaf::Internal;
            for (const auto& c : residue_children(N)) classify(c);
            changed = true;
            break;
          default:
            break;
        }
        if (nodes_.size() > 400000) throw Undecided("Markov closure does not settle");
      }
    }
  }

  // Deepest tree node containing the ball (the ball itself when it is a node).
  Disk locate(const Disk& I) const {
    Disk N = root_;
    while (nodes_.at(N) == Leaf::Internal && !(N == I))
      N = Disk::closed_ball(I.center(), N.radius_exp() + 1);
    return N;
  }

  Leaf kind(const Disk& d) const { return nodes_.at(d); }
  bool has(const Disk& d) const { return nodes_.contains(d); }

  bool all_fatou(const Disk& N) const {
    Leaf k = nodes_.at(N);
    if (k != Leaf::Internal) return k == Leaf::Fatou;
    for (const auto& c : residue_children(N))
      if (!all_fatou(c)) return false;
    return true;
  }

  void leaves_under(const Disk& N, std::vector<std::pair<Disk, Leaf>>& out) const {
    Leaf k = nodes_.at(N);
    if (k != Leaf::Internal) {
      out.emplace_back(N, k);
      return;
    }
    for (const auto& c : residue_children(N)) leaves_under(c, out);
  }

  std::vector<std::pair<Disk, Leaf>> leaves() const {
    std::vector<std::pair<Disk, Leaf>> out;
    leaves_under(root_, out);
    return out;
  }

  static bool by_position(const Disk& a, const Disk& b) {
    if (a.radius_exp() != b.radius_exp()) return a.radius_exp() < b.radius_exp();
    return a.center().value() < b.center().value();
  }

 private:
  void classify(const Disk& X) {
    bool special = std::any_of(specials_.begin(), specials_.end(), [&](const PadicNumber& z) { return membership(z, X); });
    if (special) {
      if (X.radius_exp() >= depth_) {
        nodes_[X] = Leaf::Core;
        return;
      }
      split(X);
      return;
    }
    if (certify_ball(f_, basins_, X).fate != BallFate::Unknown) {
      nodes_[X] = Leaf::Fatou;
      return;
    }
    bool crit = std::any_of(crits_.begin(), crits_.end(), [&](const PadicNumber& c) { return membership(c, X); });
    if (!crit && is_scaling_on(f_, X)) {
      nodes_[X] = Leaf::Element;
      return;
    }
    if (X.radius_exp() > depth_ + 24)
      throw Undecided("refinement could not resolve " + X.to_string() + " (critical point not separated)");
    split(X);
  }

  void split(const Disk& X) {
    nodes_[X] = Leaf::Internal;
    for (const auto& c : residue_children(X)) classify(c);
  }

  const RationalMap& f_;
  const BasinCertificates& basins_;
  std::vector<PadicNumber> specials_, crits_;
  long depth_;
  Disk root_;
  std::unordered_map<Disk, Leaf, DiskHash> nodes_;
};

struct SigEntry {
  mpz_class u;
  long t = 0;
  bool fatou = false;
  bool same_shape(const SigEntry& o) const { return u == o.u && t == o.t && fatou == o.fatou; }
};

using Signature = std::vector<SigEntry>;

bool same_shape(const Signature& a, const Signature& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].same_shape(b[i])) return false;
  return true;
}

Signature level_signature(const Refinement& tree, const PadicNumber& z, long level) {
  const unsigned long p = z.prime();
  Disk node = Disk::closed_ball(z, level);
  if (!tree.has(node) || tree.kind(node) != Leaf::Internal)
    throw Error("refinement tree is missing the ball " + node.to_string());
  Disk inner = Disk::closed_ball(z, level + 1);
  std::vector<std::pair<Disk, Leaf>> leaves;
  for (const auto& c : residue_children(node))
    if (!(c == inner)) tree.leaves_under(c, leaves);
  Signature sig;
  PadicNumber scale(mpq_class(power(p, static_cast<unsigned long>(level))), p);
  for (const auto& [d, k] : leaves) {
    if (k == Leaf::Core) throw Error("core ball inside a level annulus");
    SigEntry e;
    e.t = d.radius_exp() - level;
    e.u = ((d.center() - z) / scale).residue(static_cast<unsigned long>(e.t));
    e.fatou = k == Leaf::Fatou;
    sig.push_back(e);
  }
  std::sort(sig.begin(), sig.end(), [](const SigEntry& a, const SigEntry& b) {
    return a.t != b.t ? a.t < b.t : a.u < b.u;
  });
  return sig;
}

const char* kGreekAscii[] = {"alpha", "beta", "gamma", "delta", "epsilon", "zeta",
                             "eta", "theta", "iota", "kappa", "lambda", "mu"};
const char* kGreekDisplay[] = {"α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ", "λ", "μ"};

std::string chart_ascii(std::size_t i) { return i < 12 ? kGreekAscii[i] : "chart" + std::to_string(i); }
std::string chart_display(std::size_t i) { return i < 12 ? kGreekDisplay[i] : "χ" + subscript(static_cast<long>(i)); }

struct Chart {
  PadicNumber z;
  long lmin = 0;
  long l0 = 0;
  long period = 1;
};

std::vector<Disk> merge_siblings(std::vector<Disk> balls, unsigned long p) {
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < balls.size(); ++i)
      if (balls[i].radius_exp() > 0) groups[tree_parent(balls[i]).to_string()].push_back(i);
    for (const auto& [key, idx] : groups) {
      if (idx.size() != p) continue;
      Disk parent = tree_parent(balls[idx.front()]);
      std::vector<Disk> rest;
      for (std::size_t i = 0; i < balls.size(); ++i)
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(balls[i]);
      rest.push_back(parent);
      balls = std::move(rest);
      changed = true;
      break;
    }
  }
  std::sort(balls.begin(), balls.end(), Refinement::by_position);
  return balls;
}

}  // namespace

PartitionModel build_partition(const RationalMap& f, const BuildOptions& opts) {
  if (!f.is_polynomial())
    throw UnsupportedMap("automatic partition construction handles polynomial maps; supply a hand-authored model");
  if (f.degree() < 2) throw UnsupportedMap("map of degree < 2");
  const unsigned long p = f.prime();
  BasinCertificates basins = certify_basins(f);
  if (!basins.infinity_escape)
    throw UnsupportedMap("no escape certificate for Q_p \\ Z_p; the Julia set is not known to lie in Z_p");

  CriticalPointReport crit = rational_critical_points(f);
  if (!crit.complete())
    throw UnsupportedMap("critical points are not all rational (found " + std::to_string(crit.found) + " of " +
                         std::to_string(crit.expected) + " with multiplicity)");
  std::vector<CriticalPoint> finite;
  std::vector<PadicNumber> crit_values;
  for (const auto& c : crit.points)
    if (!c.location.is_infinity()) {
      finite.push_back(c);
      crit_values.push_back(c.location.value());
    }
  OrbitReport orbits = critical_orbit_analysis(f, finite, basins, opts.orbit);
  if (orbits.undetermined())
    throw Undetermined("a critical orbit was not resolved within the horizon");

  std::vector<PadicNumber> specials;
  std::size_t period_lcm = 1;
  for (const auto& o : orbits.orbits) {
    if (!o.julia()) continue;
    period_lcm = std::lcm(period_lcm, o.period);
    for (const auto& x : o.orbit) {
      if (x.is_infinity() || x.value().valuation() < Valuation(0))
        throw UnsupportedMap("Julia critical orbit leaves Z_p");
      if (std::find(specials.begin(), specials.end(), x.value()) == specials.end()) specials.push_back(x.value());
    }
  }
  if (period_lcm > 1) {
    // Reduce to the iterate, for which every Julia critical point is prefixed.
    RationalMap g = iterate(f, static_cast<unsigned>(period_lcm));
    PartitionModel m;
    try {
      m = build_partition(g, opts);
    } catch (const UnsupportedMap& e) {
      throw UnsupportedMap("critical orbit lands on a cycle of period " + std::to_string(period_lcm) +
                           "; the iterate f^" + std::to_string(period_lcm) + " is unsupported: " + e.what());
    }
    m.iterate = static_cast<unsigned>(period_lcm);
    m.notes.push_back("partition of the iterate f^" + std::to_string(period_lcm));
    return m;
  }
  std::sort(specials.begin(), specials.end(),
            [](const PadicNumber& a, const PadicNumber& b) { return a.value() < b.value(); });

  Refinement tree(f, basins, specials, crit_values, opts.depth);
  tree.build();
  tree.close();

  PartitionModel model;
  model.prime = p;
  model.basins = basins;

  // Charts around the special points.
  std::vector<Chart> charts;
  const long lmax = opts.depth - opts.margin;
  for (const auto& z : specials) {
    Chart c{z};
    long sep = -1;
    for (const auto& w : specials)
      if (!(w == z)) sep = std::max(sep, (z - w).valuation().value());
    c.lmin = sep + 1;
    if (lmax - c.lmin < 3) throw UnsupportedMap("refinement depth too small for the special point " + z.to_string());
    std::vector<Signature> sig;
    for (long l = c.lmin; l <= lmax; ++l) sig.push_back(level_signature(tree, z, l));
    auto S = [&](long l) -> const Signature& { return sig[static_cast<std::size_t>(l - c.lmin)]; };
    bool found = false;
    for (long s = 1; s <= opts.max_period && !found; ++s) {
      long l0 = lmax - s + 1;
      while (l0 - 1 >= c.lmin && same_shape(S(l0 - 1), S(l0 - 1 + s))) --l0;
      if (lmax - l0 + 1 >= 3 * s && l0 + s <= lmax) {
        c.l0 = l0;
        c.period = s;
        found = true;
      }
    }
    if (!found)
      throw UnsupportedMap("no periodic level structure found near the special point " + z.to_string());
    charts.push_back(c);

    std::size_t ci = charts.size() - 1;
    model.singletons.push_back({chart_ascii(ci) + "_inf", chart_display(ci) + "_∞", ProjectivePoint(z)});
    // Families from one period of levels.
    std::vector<std::tuple<long, long, mpz_class>> fams;  // r, t, u
    for (long r = 0; r < c.period; ++r)
      for (const auto& e : S(c.l0 + r))
        if (!e.fatou) fams.emplace_back(r, e.t, e.u);
    std::sort(fams.begin(), fams.end());
    for (std::size_t k = 0; k < fams.size(); ++k) {
      const auto& [r, t, u] = fams[k];
      AffineForm level{c.period, c.l0 + r - c.period};
      std::vector<CenterTerm> terms;
      if (!z.is_zero()) terms.push_back({z.value(), {0, 0}});
      terms.push_back({mpq_class(u), level});
      FamilySymbol fs;
      fs.name = chart_ascii(ci) + std::string(k, '\'');
      std::string primes;
      for (std::size_t j = 0; j < k; ++j) primes += "′";
      fs.display = chart_display(ci) + primes;
      fs.tmpl = FamilyTemplate(p, terms, {c.period, c.l0 + r - c.period + t});
      Laurent dl = compose(f.as_polynomial().derivative(), fs.tmpl.center_laurent());
      fs.ratio_exp = dominant_valuation(dl, 1);
      model.families.push_back(std::move(fs));
    }
  }

  // Isolated disks: elements outside the periodic parts of the charts.
  std::vector<Disk> isolated;
  for (const auto& [d, k] : tree.leaves()) {
    if (k != Leaf::Element) continue;
    bool periodic = false;
    for (const auto& c : charts)
      if (contains(Disk::closed_ball(c.z, c.l0), d)) periodic = true;
    if (!periodic) isolated.push_back(d);
  }
  std::sort(isolated.begin(), isolated.end(), Refinement::by_position);
  for (std::size_t i = 0; i < isolated.size(); ++i)
    model.isolated.push_back({"u" + std::to_string(i), "u" + std::to_string(i), isolated[i]});

  // Julia region: residue classes mod p^2 that are not entirely Fatou.
  std::vector<Disk> region;
  std::function<void(const Disk&)> collect = [&](const Disk& X) {
    if (X.radius_exp() == 2) {
      Disk N = tree.locate(X);
      bool fatou = N == X ? tree.all_fatou(N) : tree.kind(N) == Leaf::Fatou;
      if (!fatou) region.push_back(X);
      return;
    }
    for (const auto& c : residue_children(X)) collect(c);
  };
  collect(Disk::integers(p));
  model.julia_region = merge_siblings(region, p);

  model.notes.push_back("refinement depth " + std::to_string(opts.depth) + ", " + std::to_string(tree.leaves().size()) +
                        " leaves");
  for (std::size_t i = 0; i < charts.size(); ++i)
    model.notes.push_back("chart at " + charts[i].z.to_string() + ": levels from " + std::to_string(charts[i].lmin) +
                          ", periodic from " + std::to_string(charts[i].l0) + " with period " +
                          std::to_string(charts[i].period));

  model.rebuild_nodes();
  infer_transitions(model, f, opts);
  CompatibilityReport rep = check_compatibility(model, f, opts);
  if (!rep.ok()) throw CompatibilityError(rep.failures.front().symbol, rep.failures.front().what);
  return model;
}

namespace {

struct Pattern {
  std::set<std::size_t> concrete;
  std::set<std::pair<std::size_t, long>> shifts;  // family, m - n
  std::vector<std::pair<std::size_t, IndexRange>> ranges;
  bool operator==(const Pattern& o) const {
    return concrete == o.concrete && shifts == o.shifts && ranges == o.ranges;
  }
};

Pattern pattern_of(const SuccessorSet& s, long n) {
  Pattern p;
  for (const auto& x : s.finite) {
    if (x.is_family())
      p.shifts.insert({x.id, x.index - n});
    else
      p.concrete.insert(x.id);
  }
  p.ranges = s.ranges;
  return p;
}

Disk symbol_image(const PartitionModel& model, const RationalMap& g, const SymbolRef& s) {
  Disk d = model.disk_of(s);
  if (!is_scaling_on(g, d))
    throw CompatibilityError(model.name(s), "the map is not scaling on " + d.to_string());
  return scaling_image(g, d);
}

void add_targets(TransitionGraph& graph, SymbolRef::Kind kind, std::size_t id, IndexRange src, const SuccessorSet& s,
                 std::optional<long> n) {
  auto rule = [&](TargetPattern t) { graph.add_rule({kind, id, src, t}); };
  for (const auto& x : s.finite) {
    if (!x.is_family()) {
      rule({TargetPattern::Kind::Concrete, x.id, 0, {}});
    } else if (n) {
      rule({TargetPattern::Kind::Shift, x.id, x.index - *n, {}});
    } else {
      rule({TargetPattern::Kind::Range, x.id, 0, {x.index, x.index}});
    }
  }
  for (const auto& [fam, r] : s.ranges) rule({TargetPattern::Kind::Range, fam, 0, r});
}

std::vector<long> first_members(const IndexSet& domain, long count) {
  std::vector<long> out;
  for (const auto& r : domain.ranges())
    for (long n = r.lo; n <= r.hi && static_cast<long>(out.size()) < count; ++n) out.push_back(n);
  return out;
}

}  // namespace

void infer_transitions(PartitionModel& model, const RationalMap& f, const BuildOptions& opts) {
  RationalMap g = partition_map(model, f);
  model.rebuild_nodes();
  TransitionGraph& graph = model.graph;
  for (std::size_t i = 0; i < model.singletons.size(); ++i) {
    ProjectivePoint y = g(model.singletons[i].point);
    auto s = lookup(model, y);
    if (!s) throw CompatibilityError(model.singletons[i].name, "image " + y.to_string() + " lies in no symbol");
    SuccessorSet one;
    one.finite.push_back(*s);
    add_targets(graph, SymbolRef::Kind::Concrete, i, {}, one, std::nullopt);
  }
  for (std::size_t i = 0; i < model.isolated.size(); ++i) {
    SymbolRef ref = model.isolated_ref(i);
    Decomposition d = decompose(model, g, symbol_image(model, g, ref));
    if (!d.problems.empty()) throw CompatibilityError(model.name(ref), d.problems.front());
    add_targets(graph, SymbolRef::Kind::Concrete, ref.id, {}, d.successors, std::nullopt);
  }
  for (std::size_t fi = 0; fi < model.families.size(); ++fi) {
    const auto& fam = model.families[fi];
    std::vector<long> ns = first_members(fam.domain, opts.n_check);
    if (ns.empty()) continue;
    std::vector<SuccessorSet> succ;
    std::vector<Pattern> pats;
    for (long n : ns) {
      SymbolRef ref = SymbolRef::member(fi, n);
      Decomposition d = decompose(model, g, symbol_image(model, g, ref));
      if (!d.problems.empty()) throw CompatibilityError(model.name(ref), d.problems.front());
      pats.push_back(pattern_of(d.successors, n));
      succ.push_back(std::move(d.successors));
    }
    const bool unbounded = fam.domain.ranges().back().unbounded();
    std::size_t first_uniform = ns.size();
    if (unbounded) {
      first_uniform = ns.size() - 1;
      if (!pats.back().ranges.empty())
        throw CompatibilityError(fam.name + "_" + std::to_string(ns.back()),
                                 "successors of late members are not a finite shift pattern");
      while (first_uniform > 0 && pats[first_uniform - 1] == pats.back()) --first_uniform;
      if (ns.size() - first_uniform < 3)
        throw CompatibilityError(fam.name, "no uniform successor pattern among the first " +
                                               std::to_string(ns.size()) + " members");
    }
    for (std::size_t k = 0; k < first_uniform; ++k)
      add_targets(graph, SymbolRef::Kind::Family, fi, {ns[k], ns[k]}, succ[k], ns[k]);
    if (unbounded) {
      long n1 = ns[first_uniform];
      for (const auto& piece : fam.domain.intersect(IndexRange{n1, kUnbounded}).ranges())
        add_targets(graph, SymbolRef::Kind::Family, fi, piece, succ[first_uniform], n1);
    }
  }
}

namespace {

// Canonical form: single-index ranges become finite members.
SuccessorSet canonical(SuccessorSet s) {
  std::vector<std::pair<std::size_t, IndexRange>> ranges;
  for (const auto& [f, r] : s.ranges) {
    if (!r.unbounded() && r.hi - r.lo < 64) {
      for (long n = r.lo; n <= r.hi; ++n) s.finite.push_back(SymbolRef::member(f, n));
    } else {
      ranges.emplace_back(f, r);
    }
  }
  std::sort(s.finite.begin(), s.finite.end());
  s.finite.erase(std::unique(s.finite.begin(), s.finite.end()), s.finite.end());
  std::sort(ranges.begin(), ranges.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second.lo < b.second.lo;
  });
  s.ranges = std::move(ranges);
  return s;
}

bool same_successors(const SuccessorSet& a, const SuccessorSet& b) {
  SuccessorSet x = canonical(a), y = canonical(b);
  return x.finite == y.finite && x.ranges == y.ranges;
}

}  // namespace

CompatibilityReport check_compatibility(const PartitionModel& model, const RationalMap& f, const BuildOptions& opts) {
  CompatibilityReport rep;
  RationalMap g = partition_map(model, f);
  auto fail = [&](const SymbolRef& s, const std::string& what) { rep.failures.push_back({model.name(s), what}); };

  // Pairwise disjointness of the concrete sets and the first members.
  std::vector<SymbolRef> syms;
  for (std::size_t i = 0; i < model.concrete_count(); ++i) syms.push_back(SymbolRef::concrete(i));
  for (std::size_t fi = 0; fi < model.families.size(); ++fi)
    for (long n : first_members(model.families[fi].domain, opts.n_check)) syms.push_back(SymbolRef::member(fi, n));
  for (std::size_t i = 0; i < syms.size(); ++i)
    for (std::size_t j = i + 1; j < syms.size(); ++j)
      if (!disjoint(model.disk_of(syms[i]), model.disk_of(syms[j])))
        fail(syms[i], "overlaps " + model.name(syms[j]));

  for (const auto& s : syms) {
    ++rep.concrete_checks;
    SuccessorSet declared = model.graph.successors(s);
    if (model.is_singleton(s)) {
      ProjectivePoint y = g(model.singletons[s.id].point);
      auto t = lookup(model, y);
      if (!t || declared.finite.size() != 1 || !declared.ranges.empty() || declared.finite.front() != *t)
        fail(s, "image " + y.to_string() + " does not match the declared successor");
      continue;
    }
    Disk d = model.disk_of(s);
    if (!is_scaling_on(g, d)) {
      fail(s, "the map is not scaling on " + d.to_string());
      continue;
    }
    Decomposition dec = decompose(model, g, scaling_image(g, d));
    for (const auto& pr : dec.problems) fail(s, pr);
    if (dec.problems.empty() && !same_successors(dec.successors, declared))
      fail(s, "image decomposes as " + dec.successors.to_string(model.graph) + ", declared " +
                  declared.to_string(model.graph));
  }

  // Symbolic check of uniform single-target shift rules for every n.
  if (!g.is_polynomial()) {
    rep.notes.push_back("symbolic checks skipped: the map is not a polynomial");
    return rep;
  }
  Polynomial gp = g.as_polynomial();
  Polynomial dg = gp.derivative();
  std::map<std::pair<std::size_t, long>, int> rules_per_source;
  for (const auto& r : model.graph.rules())
    if (r.source_kind == SymbolRef::Kind::Family) ++rules_per_source[{r.source_id, r.source_range.lo}];
  for (const auto& r : model.graph.rules()) {
    if (r.source_kind != SymbolRef::Kind::Family || !r.source_range.unbounded()) continue;
    const long n0 = r.source_range.lo;
    const auto& F = model.families[r.source_id];
    SymbolRef first = SymbolRef::member(r.source_id, n0);
    if (r.target.kind != TargetPattern::Kind::Shift || rules_per_source[{r.source_id, n0}] != 1) {
      rep.notes.push_back(F.name + " members n >= " + std::to_string(n0) + " checked concretely only (n <= " +
                          std::to_string(n0 + opts.n_check) + ")");
      continue;
    }
    ++rep.symbolic_checks;
    const auto& G = model.families[r.target.id];
    const long k = r.target.shift;
    Laurent LF = F.tmpl.center_laurent();
    auto ratio = dominant_valuation(compose(dg, LF), n0);
    if (!ratio) {
      fail(first, "no dominant term in f' along the family");
      continue;
    }
    AffineForm img_radius = F.tmpl.radius() + *ratio;
    AffineForm tgt_radius = G.tmpl.radius().shifted(k);
    if (!(img_radius == tgt_radius)) {
      fail(first, "image radius " + img_radius.to_string() + " differs from target radius " + tgt_radius.to_string());
      continue;
    }
    Laurent diff = compose(gp, LF) - G.tmpl.center_laurent().shifted(k);
    if (!valuation_at_least(diff, tgt_radius, n0))
      fail(first, "image center is not congruent to the center of " + G.name + "_(n" +
                      (k >= 0 ? "+" : "") + std::to_string(k) + ") for all n >= " + std::to_string(n0));
  }
  return rep;
}

}  // namespace padic
