#include "padic/partition.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "padic/errors.hpp"
#include "padic/local_analysis.hpp"

namespace padic {

Disk PartitionModel::disk_of(const SymbolRef& s) const {
  if (s.is_family()) return families.at(s.id).tmpl.disk(s.index);
  if (s.id < singletons.size()) return Disk::point(singletons[s.id].point);
  return isolated.at(s.id - singletons.size()).disk;
}

void PartitionModel::rebuild_nodes() {
  graph = TransitionGraph();
  for (const auto& s : singletons) graph.add_concrete(s.name, s.display);
  for (const auto& d : isolated) graph.add_concrete(d.name, d.display);
  for (const auto& f : families) graph.add_family(f.name, f.display, f.domain);
}

RationalMap partition_map(const PartitionModel& model, const RationalMap& f) {
  if (model.prime != f.prime()) throw Error("partition model and map use different primes");
  return model.iterate > 1 ? iterate(f, model.iterate) : f;
}

namespace {

// Geometry of a family relative to its limit point z0 (the n-independent part
// of the center): members sit at level lambda(n) = v(center(n) - z0).
struct FamilyGeometry {
  mpq_class z0;
  std::optional<AffineForm> level;
  AffineForm radius;
  long start = 1;
};

FamilyGeometry geometry(const FamilySymbol& fam) {
  FamilyGeometry g;
  const unsigned long p = fam.tmpl.prime();
  for (const auto& t : fam.tmpl.center_terms()) {
    if (t.exponent.slope != 0) continue;
    long e = t.exponent.offset;
    mpq_class pe = e >= 0 ? mpq_class(power(p, static_cast<unsigned long>(e)))
                          : mpq_class(mpz_class(1), power(p, static_cast<unsigned long>(-e)));
    g.z0 += t.coefficient * pe;
  }
  g.radius = fam.tmpl.radius();
  g.start = fam.domain.empty() ? 1 : fam.domain.ranges().front().lo;
  Laurent rel = fam.tmpl.center_laurent() - Laurent::constant(p, g.z0);
  if (auto d = dominant_valuation(rel, g.start); d && d->slope > 0) g.level = d;
  return g;
}

std::vector<long> candidate_indices(const FamilySymbol& fam, const FamilyGeometry& g, long level_value) {
  std::vector<long> out;
  auto solve = [&](const AffineForm& form) {
    if (form.slope == 0) return;
    long num = level_value - form.offset;
    if (num % form.slope != 0) return;
    out.push_back(num / form.slope);
  };
  if (g.level) solve(*g.level);
  const unsigned long p = fam.tmpl.prime();
  for (const auto& t : fam.tmpl.center_terms()) {
    if (t.exponent.slope == 0) continue;
    long vc = rational_valuation(t.coefficient, p).value();
    solve({t.exponent.slope, t.exponent.offset + vc});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase_if(out, [&](long n) { return !fam.domain.contains(n); });
  return out;
}

}  // namespace

std::optional<SymbolRef> lookup(const PartitionModel& model, const PadicNumber& x) {
  for (std::size_t i = 0; i < model.singletons.size(); ++i) {
    const auto& pt = model.singletons[i].point;
    if (!pt.is_infinity() && pt.value() == x) return model.singleton_ref(i);
  }
  for (std::size_t i = 0; i < model.isolated.size(); ++i)
    if (membership(x, model.isolated[i].disk)) return model.isolated_ref(i);
  for (std::size_t f = 0; f < model.families.size(); ++f) {
    const auto& fam = model.families[f];
    FamilyGeometry g = geometry(fam);
    if (x.value() == g.z0) continue;
    long vd = (x - PadicNumber(g.z0, model.prime)).valuation().value();
    for (long n : candidate_indices(fam, g, vd))
      if (membership(x, fam.tmpl.disk(n))) return SymbolRef::member(f, n);
  }
  return std::nullopt;
}

std::optional<SymbolRef> lookup(const PartitionModel& model, const ProjectivePoint& x) {
  if (x.is_infinity()) {
    for (std::size_t i = 0; i < model.singletons.size(); ++i)
      if (model.singletons[i].point.is_infinity()) return model.singleton_ref(i);
    return std::nullopt;
  }
  return lookup(model, x.value());
}

std::optional<SymbolRef> lookup_ball(const PartitionModel& model, const Disk& ball) {
  if (ball.is_point()) return lookup(model, ball.point_value());
  if (!ball.is_ball()) return std::nullopt;
  auto s = lookup(model, ball.center());
  if (!s || model.is_singleton(*s)) return std::nullopt;
  if (!contains(model.disk_of(*s), ball)) return std::nullopt;
  return s;
}

namespace {

bool meets_symbols(const PartitionModel& model, const Disk& X) {
  for (const auto& s : model.singletons)
    if (membership(s.point, X)) return true;
  for (const auto& d : model.isolated)
    if (!disjoint(d.disk, X)) return true;
  for (const auto& fam : model.families) {
    FamilyGeometry g = geometry(fam);
    PadicNumber z0(g.z0, model.prime);
    if (membership(z0, X)) {
      if (!fam.domain.empty() && fam.domain.ranges().back().unbounded()) return true;
      for (const auto& r : fam.domain.ranges())
        for (long n = r.lo; n <= r.hi; ++n)
          if (!disjoint(fam.tmpl.disk(n), X)) return true;
      continue;
    }
    long lx = (X.center() - z0).valuation().value();
    for (long n : candidate_indices(fam, g, lx))
      if (!disjoint(fam.tmpl.disk(n), X)) return true;
  }
  return false;
}

bool certified_fatou(const RationalMap& g, const BasinCertificates& basins, const Disk& X) {
  Disk Y = X;
  try {
    for (int i = 0; i < 64; ++i) {
      if (certify_ball(g, basins, Y).fate != BallFate::Unknown) return true;
      Y = image_hull(g, Y);
      if (!Y.is_ball()) return false;
    }
  } catch (const Error&) {
    return false;
  }
  return false;
}

}  // namespace

Decomposition decompose(const PartitionModel& model, const RationalMap& g, const Disk& I, long depth_slack) {
  Decomposition out;
  if (!I.is_ball()) throw Error("decompose expects a ball");
  const long rho = I.radius_exp();
  for (std::size_t i = 0; i < model.singletons.size(); ++i)
    if (membership(model.singletons[i].point, I)) out.successors.finite.push_back(model.singleton_ref(i));
  for (std::size_t i = 0; i < model.isolated.size(); ++i) {
    const Disk& d = model.isolated[i].disk;
    if (contains(I, d))
      out.successors.finite.push_back(model.isolated_ref(i));
    else if (!disjoint(I, d))
      out.problems.push_back("image " + I.to_string() + " partially overlaps " + model.isolated[i].name);
  }
  for (std::size_t f = 0; f < model.families.size(); ++f) {
    const auto& fam = model.families[f];
    FamilyGeometry geo = geometry(fam);
    PadicNumber z0(geo.z0, model.prime);
    auto classify_member = [&](long n) {
      Disk d = fam.tmpl.disk(n);
      if (contains(I, d))
        out.successors.finite.push_back(SymbolRef::member(f, n));
      else if (!disjoint(I, d))
        out.problems.push_back("image " + I.to_string() + " partially overlaps " + fam.name + "_" + std::to_string(n));
    };
    if (membership(z0, I)) {
      if (!geo.level || geo.radius.slope < 0) {
        out.problems.push_back("family " + fam.name + " accumulates in " + I.to_string() +
                               " without an increasing level form");
        continue;
      }
      // Members with level >= rho and radius >= rho lie in I, and stay there.
      long n_star = geo.start;
      while (geo.level->at(n_star) < rho || geo.radius.at(n_star) < rho) {
        if (geo.radius.slope == 0 && geo.level->at(n_star) >= rho) {
          n_star = kUnbounded;
          break;
        }
        ++n_star;
      }
      long finite_end = n_star == kUnbounded ? geo.start + 64 : n_star;
      for (long n = geo.start; n < finite_end; ++n)
        if (fam.domain.contains(n)) classify_member(n);
      if (n_star != kUnbounded)
        for (const auto& r : fam.domain.intersect(IndexRange{n_star, kUnbounded}).ranges())
          out.successors.ranges.emplace_back(f, r);
    } else {
      long li = (I.center() - z0).valuation().value();
      for (long n : candidate_indices(fam, geo, li)) classify_member(n);
    }
  }
  std::sort(out.successors.finite.begin(), out.successors.finite.end());
  out.successors.finite.erase(std::unique(out.successors.finite.begin(), out.successors.finite.end()),
                              out.successors.finite.end());
  if (!out.problems.empty()) return out;

  // The rest of I must be Fatou.
  std::function<void(const Disk&)> rest = [&](const Disk& X) {
    if (!out.problems.empty()) return;
    if (lookup_ball(model, X)) return;
    if (!meets_symbols(model, X)) {
      if (!certified_fatou(g, model.basins, X))
        out.problems.push_back("part " + X.to_string() + " of image " + I.to_string() +
                               " is neither a symbol nor certified Fatou");
      return;
    }
    if (X.radius_exp() >= rho + depth_slack) {
      // Deep near a singleton the level structure repeats (the families
      // accumulating there carry it); elsewhere an unresolved piece is an error.
      const long near = rho + depth_slack / 2;
      bool at_singleton = std::any_of(model.singletons.begin(), model.singletons.end(), [&](const SingletonSymbol& s) {
        return !s.point.is_infinity() && contains(Disk::closed_ball(s.point.value(), near), X);
      });
      if (!at_singleton)
        out.problems.push_back("could not resolve " + X.to_string() + " within the depth slack");
      return;
    }
    for (const auto& c : residue_children(X)) rest(c);
  };
  rest(I);
  return out;
}

namespace {

Disk scaling_image(const RationalMap& g, const Disk& ball) {
  long v1 = scaling_ratio_valuation(g, ball);
  return Disk::closed_ball(g(ball.center()), ball.radius_exp() + v1);
}

}  // namespace

CodeSequence code_point(const PartitionModel& model, const RationalMap& f, const PadicNumber& x, std::size_t length,
                        const CodeOptions& opts) {
  RationalMap g = partition_map(model, f);
  CodeSequence code;
  code.horizon = length;
  if (length == 0) return code;
  PadicNumber cur = x;
  std::size_t i = 0;
  for (;; ++i) {
    auto s = lookup(model, cur);
    if (!s) throw LeftJuliaRegion(i, "orbit of " + x.to_string() + " leaves the symbol sets at step " + std::to_string(i));
    code.symbols.push_back(*s);
    code.exact_steps = i + 1;
    if (code.symbols.size() == length) return code;
    if (cur.bit_size() > opts.exact_bits && !model.is_singleton(*s)) break;
    cur = g(cur);
  }
  // Ball arithmetic from the exact point `cur` at step i.
  const std::size_t base = code.symbols.size();
  for (long K = 128 + 4 * static_cast<long>(length);; K *= 2) {
    if (K > (1L << 20)) throw Error("coding precision exhausted for " + x.to_string());
    code.symbols.resize(base);
    SymbolRef s = code.symbols.back();
    Disk ball = Disk::closed_ball(cur, std::max(K, model.disk_of(s).radius_exp()));
    bool retry = false;
    for (std::size_t step = i + 1; code.symbols.size() < length; ++step) {
      if (model.is_singleton(s)) {
        retry = true;  // an exact special point cannot be recognized from a ball
        break;
      }
      ball = scaling_image(g, ball);
      auto next = lookup_ball(model, ball);
      if (!next) {
        if (!meets_symbols(model, ball))
          throw LeftJuliaRegion(step, "orbit of " + x.to_string() + " leaves the symbol sets at step " +
                                          std::to_string(step));
        retry = true;
        break;
      }
      s = *next;
      code.symbols.push_back(s);
    }
    if (!retry) return code;
  }
}

namespace {

// The ball P inside `outer` (on which g is a scaling bijection with ratio
// valuation v1) with g(P) = target.
Disk pull_back(const RationalMap& g, const Disk& outer, long v1, const Disk& target) {
  if (!contains(scaling_image(g, outer), target)) throw Error("pullback target " + target.to_string() +
                                                              " is not inside the image of " + outer.to_string());
  const long want = target.radius_exp() - v1;
  // Newton's method: on a scaling disk |g'| is constant, so the iteration
  // converges; truncating keeps the rationals short.  Verified afterwards.
  {
    const RationalMap dg = derivative(g);
    const PadicNumber& t = target.center();
    PadicNumber x = outer.center();
    try {
      for (int iter = 0; iter < 64; ++iter) {
        PadicNumber diff = g(x) - t;
        if (diff.is_zero() || diff.valuation() >= Valuation(target.radius_exp())) break;
        x = (x - diff / dg(x)).truncate(want + 4);
      }
      PadicNumber diff = g(x) - t;
      if (membership(x, outer) && (diff.is_zero() || diff.valuation() >= Valuation(target.radius_exp())))
        return Disk::closed_ball(x, want);
    } catch (const Error&) {
      // fall through to the digit descent
    }
  }
  Disk cur = outer;
  while (cur.radius_exp() < want) {
    bool found = false;
    for (const auto& c : residue_children(cur)) {
      if (!disjoint(scaling_image(g, c), target)) {
        cur = c;
        found = true;
        break;
      }
    }
    if (!found) throw Error("pullback lost the target " + target.to_string());
  }
  return cur;
}

}  // namespace

DecodeResult decode_word(const PartitionModel& model, const RationalMap& f, const InfiniteWord& word,
                         long precision_exp, std::size_t max_symbols) {
  if (word.period.empty()) throw Error("decode_word: the periodic part must be non-empty");
  RationalMap g = partition_map(model, f);
  const std::size_t cycle_end = word.prefix.size() + word.period.size();
  for (std::size_t i = 0; i <= cycle_end; ++i)
    if (!model.graph.valid(word.at(i)))
      throw InadmissibleWord(i, "symbol at position " + std::to_string(i) + " is not in the alphabet");
  for (std::size_t i = 0; i < cycle_end; ++i)
    if (!model.graph.has_edge(word.at(i), word.at(i + 1)))
      throw InadmissibleWord(i, "inadmissible transition " + model.name(word.at(i)) + " -> " +
                                    model.name(word.at(i + 1)) + " at position " + std::to_string(i));

  // Eventually-singleton words: pull the special point back exactly.
  std::optional<std::size_t> first_singleton;
  for (std::size_t i = 0; i < cycle_end; ++i)
    if (model.is_singleton(word.at(i))) {
      first_singleton = i;
      break;
    }
  if (first_singleton) {
    ProjectivePoint pt = model.singletons[word.at(*first_singleton).id].point;
    if (pt.is_infinity()) throw Error("decode_word: the point at infinity cannot be pulled back in the affine chart");
    PadicNumber x = pt.value();
    bool exact = true;
    long prec = kUnbounded;
    for (std::size_t i = *first_singleton; i-- > 0;) {
      Disk dom = model.disk_of(word.at(i));
      std::optional<PadicNumber> pre;
      if (exact) {
        Polynomial eq = g.numerator() - g.denominator() * Polynomial::constant(x.value());
        for (const auto& [r, mult] : rational_roots(eq)) {
          PadicNumber cand(r, model.prime);
          if (membership(cand, dom)) pre = cand;
        }
      }
      if (pre) {
        x = *pre;
        continue;
      }
      // Irrational preimage: continue with balls.
      long v1 = scaling_ratio_valuation(g, dom);
      if (exact) {
        exact = false;
        prec = precision_exp + 64;
      }
      Disk P = pull_back(g, dom, v1, Disk::closed_ball(x, prec));
      x = P.center();
      prec = P.radius_exp();
    }
    if (!exact && prec < precision_exp)
      throw InsufficientLength(prec, "decode_word: achievable precision p^-" + std::to_string(prec));
    return {x, exact, exact ? kUnbounded : prec, *first_singleton + 1};
  }

  // Infinite words: choose m so that pulling disk(w_m) back reaches the
  // requested precision, then pull back step by step.
  std::vector<long> ratio;
  long best = std::numeric_limits<long>::min();
  std::size_t m = 0;
  for (;; ++m) {
    if (m > max_symbols)
      throw InsufficientLength(best, "decode_word: " + std::to_string(max_symbols) +
                                         " symbols reach only precision p^-" + std::to_string(best));
    long sum = 0;
    for (std::size_t i = 0; i < m; ++i) sum += ratio[i];
    long reach = model.disk_of(word.at(m)).radius_exp() - sum;
    best = std::max(best, reach);
    if (reach >= precision_exp) break;
    ratio.push_back(scaling_ratio_valuation(g, model.disk_of(word.at(m))));
  }
  Disk D = model.disk_of(word.at(m));
  for (std::size_t i = m; i-- > 0;) D = pull_back(g, model.disk_of(word.at(i)), ratio[i], D);
  return {D.center(), false, D.radius_exp(), m + 1};
}

std::vector<Disk> julia_residues(const PartitionModel& model, const RationalMap& f, long level) {
  RationalMap g = partition_map(model, f);
  std::vector<PadicNumber> crits;
  for (const auto& c : rational_critical_points(g).points)
    if (!c.location.is_infinity()) crits.push_back(c.location.value());
  const long depth_cap = level + 48;

  std::function<bool(const Disk&, long)> alive;
  std::function<bool(const Disk&, long)> alive_piece = [&](const Disk& Y, long i) -> bool {
    for (const auto& s : model.singletons)
      if (membership(s.point, Y)) return true;  // a Julia point whose orbit never leaves
    bool crit_inside = std::any_of(crits.begin(), crits.end(), [&](const PadicNumber& c) { return membership(c, Y); });
    if (!crit_inside && is_scaling_on(g, Y)) return alive(scaling_image(g, Y), i - 1);
    if (Y.radius_exp() > depth_cap) throw Undecided("julia_residues: could not resolve " + Y.to_string());
    for (const auto& c : residue_children(Y))
      if (alive_piece(c, i)) return true;
    return false;
  };
  alive = [&](const Disk& X, long i) -> bool {
    std::vector<Disk> pieces;
    for (const auto& R : model.julia_region) {
      if (contains(R, X)) {
        pieces = {X};
        break;
      }
      if (contains(X, R)) pieces.push_back(R);
    }
    if (pieces.empty()) return false;
    if (i <= 0) return true;
    return std::any_of(pieces.begin(), pieces.end(), [&](const Disk& Y) { return alive_piece(Y, i); });
  };

  std::vector<Disk> out;
  std::function<void(const Disk&)> walk = [&](const Disk& X) {
    if (!alive(X, level)) return;
    if (X.radius_exp() >= level) {
      out.push_back(X);
      return;
    }
    for (const auto& c : residue_children(X)) walk(c);
  };
  walk(Disk::integers(model.prime));
  std::sort(out.begin(), out.end(), [](const Disk& a, const Disk& b) { return a.center().value() < b.center().value(); });
  return out;
}

}  // namespace padic
