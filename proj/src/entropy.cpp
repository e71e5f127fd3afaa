#include "padic/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "padic/errors.hpp"

namespace padic {

std::string LoopTail::to_string() const {
  std::string s = "delta(n) = ";
  if (constant()) return s + values.front().get_str() + " for n >= " + std::to_string(start);
  s += "(";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + values[i].get_str();
  return s + ") repeating from n = " + std::to_string(start);
}

std::string to_string(EntropyMethod m) {
  return m == EntropyMethod::ClosedForm ? "closed-form" : "truncation-bracket";
}

long census_index_bound(const TransitionGraph& g, const SymbolRef& base, long len) {
  long start = std::max(g.max_rule_constant(), base.is_family() ? base.index : 1);
  return start + (len + 1) * std::max<long>(1, g.max_abs_shift());
}

namespace {

std::vector<mpz_class> dp_counts(const TransitionGraph& g, const SymbolRef& base, long max_len, long bound) {
  TruncatedGraph t = g.truncate(bound);
  auto it = t.position.find(base);
  if (it == t.position.end()) throw Error("census base outside the truncation");
  const std::size_t b = it->second;
  std::vector<mpz_class> cur(t.nodes.size(), 0), next(t.nodes.size());
  cur[b] = 1;
  std::vector<mpz_class> delta;
  for (long len = 1; len <= max_len; ++len) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t u = 0; u < t.nodes.size(); ++u) {
      if (cur[u] == 0) continue;
      for (std::size_t v : t.adj[u]) next[v] += cur[u];
    }
    delta.push_back(next[b]);
    next[b] = 0;  // first return: paths stop at the base
    std::swap(cur, next);
  }
  return delta;
}

std::optional<LoopTail> recognize_tail(const std::vector<mpz_class>& d, std::size_t window) {
  if (window == 0 || d.size() < window) return std::nullopt;
  const std::size_t L = d.size();
  for (std::size_t q = 1; q <= window / 2; ++q) {
    bool periodic = true;
    for (std::size_t i = L - window; i + q < L && periodic; ++i) periodic = d[i] == d[i + q];
    if (!periodic) continue;
    std::size_t s = L - window;
    while (s > 0 && d[s - 1] == d[s - 1 + q]) --s;
    LoopTail t;
    t.start = static_cast<long>(s) + 1;
    t.values.assign(d.begin() + static_cast<long>(s), d.begin() + static_cast<long>(s + q));
    return t;
  }
  return std::nullopt;
}

}  // namespace

LoopCensus first_return_census(const TransitionGraph& g, const SymbolRef& base, long max_len,
                               const CensusOptions& opts) {
  if (!g.valid(base)) throw Error("census: unknown base symbol");
  if (max_len < 1) throw Error("census: max_len must be positive");
  long bound = census_index_bound(g, base, max_len);
  std::vector<mpz_class> a = dp_counts(g, base, max_len, bound);
  std::vector<mpz_class> b = dp_counts(g, base, max_len, 2 * bound);
  if (a != b)
    throw Error("first-return loops of bounded length are not confined to a finite index range; "
                "the edge rules admit infinitely many short loops");
  LoopCensus c;
  c.base = base;
  c.counts = std::move(a);
  c.index_bound = bound;
  c.tail = recognize_tail(c.counts, opts.window);
  return c;
}

std::vector<mpz_class> enumerate_first_return_loops(const TransitionGraph& g, const SymbolRef& base, long max_len) {
  long bound = census_index_bound(g, base, max_len);
  std::vector<mpz_class> delta(static_cast<std::size_t>(max_len), 0);
  std::vector<SymbolRef> path{base};
  std::function<void()> dfs = [&]() {
    long len = static_cast<long>(path.size());  // edges taken so far + 1
    if (len > max_len) return;
    SuccessorSet s = g.successors(path.back());
    std::vector<SymbolRef> next = s.finite;
    for (const auto& [fam, r] : s.ranges)
      for (long n = r.lo; n <= std::min(r.hi, bound); ++n) next.push_back(SymbolRef::member(fam, n));
    for (const auto& y : next) {
      if (y.is_family() && y.index > bound) continue;
      if (y == base) {
        delta[static_cast<std::size_t>(len - 1)] += 1;
        continue;
      }
      path.push_back(y);
      dfs();
      path.pop_back();
    }
  };
  dfs();
  return delta;
}

mpq_class loop_series(const LoopCensus& census, const mpq_class& z) {
  if (!census.tail) throw Error("loop_series needs a recognized tail");
  const LoopTail& t = *census.tail;
  mpq_class sum = 0, zn = 1;
  for (long n = 1; n < t.start; ++n) {
    zn *= z;
    sum += mpq_class(census.delta(n)) * zn;
  }
  bool zero_tail = std::all_of(t.values.begin(), t.values.end(), [](const mpz_class& v) { return v == 0; });
  if (zero_tail) return sum;
  if (z >= 1) throw Error("loop_series: divergent at z >= 1");
  mpq_class block = 0, zi = 1;
  for (const auto& v : t.values) {
    block += mpq_class(v) * zi;
    zi *= z;
  }
  // zi = z^q here.
  zn *= z;  // z^start
  return sum + zn * block / (1 - zi);
}

namespace {

using Series = std::function<mpq_class(const mpq_class&)>;

// Bisection for G(R) = 1 on (0, 1], G increasing; G(1) may be +inf.
void bisect(const Series& G, bool finite_at_one, const mpq_class& width, mpq_class& lo, mpq_class& hi) {
  lo = 0;
  hi = 1;
  if (finite_at_one) {
    mpq_class g1 = G(1);
    if (g1 == 1) {
      lo = hi = 1;
      return;
    }
    if (g1 < 1) throw Error("entropy 0 or divergent census: G(1-) <= 1, no root in (0,1)");
  }
  while (hi - lo > width) {
    mpq_class mid = (lo + hi) / 2;
    mpq_class v = G(mid);
    if (v == 1) {
      lo = hi = mid;
      return;
    }
    (v < 1 ? lo : hi) = mid;
  }
}

std::vector<mpz_class> characteristic(const LoopCensus& c) {
  const LoopTail& t = *c.tail;
  const std::size_t q = t.values.size();
  const std::size_t n0 = static_cast<std::size_t>(t.start);
  std::vector<mpz_class> one_minus_P(std::max<std::size_t>(n0, 1), 0);
  one_minus_P[0] = 1;
  for (std::size_t n = 1; n < n0; ++n) one_minus_P[n] -= c.delta(static_cast<long>(n));
  std::vector<mpz_class> out(one_minus_P.size() + q + n0 + q, 0);
  for (std::size_t i = 0; i < one_minus_P.size(); ++i) {
    out[i] += one_minus_P[i];
    out[i + q] -= one_minus_P[i];
  }
  for (std::size_t i = 0; i < q; ++i) out[n0 + i] -= t.values[i];
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  mpz_class g = 0;
  for (const auto& a : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  if (g == 0) return out;
  if (out.back() < 0) g = -g;
  for (auto& a : out) a /= g;
  return out;
}

double down(double x) { return std::nextafter(std::nextafter(x, -INFINITY), -INFINITY); }
double up(double x) { return std::nextafter(std::nextafter(x, INFINITY), INFINITY); }

void fill_h(EntropyResult& r) {
  double Rlo = down(r.R_lo.get_d());
  double Rhi = up(r.R_hi.get_d());
  if (r.R_lo == r.R_hi && r.R_lo == 1) {
    r.h_lo = r.h_hi = 0;
    return;
  }
  Rhi = std::min(Rhi, 1.0);
  r.h_lo = std::max(0.0, down(-std::log(Rhi)));
  r.h_hi = up(-std::log(Rlo));
}

}  // namespace

EntropyResult gurevich_entropy(const LoopCensus& census, const EntropyOptions& opts) {
  if (census.counts.empty()) throw Error("entropy: empty census");
  EntropyResult r;
  if (census.tail) {
    r.method = EntropyMethod::ClosedForm;
    bool zero_tail = std::all_of(census.tail->values.begin(), census.tail->values.end(),
                                 [](const mpz_class& v) { return v == 0; });
    bisect([&](const mpq_class& z) { return loop_series(census, z); }, zero_tail, opts.width, r.R_lo, r.R_hi);
    r.characteristic = characteristic(census);
    r.assumptions.push_back("tail " + census.tail->to_string() + " inferred from the last window of the census");
    r.assumptions.push_back("closed form converges on |z| < 1 and is strictly increasing on (0, 1)");
  } else {
    if (!opts.delta_bound)
      throw Error("entropy: no closed form recognized and no certified bound on delta(n) supplied");
    r.method = EntropyMethod::TruncationBracket;
    const long L = census.length();
    const mpq_class B(*opts.delta_bound);
    auto partial = [&](const mpq_class& z) {
      mpq_class s = 0, zn = 1;
      for (long n = 1; n <= L; ++n) {
        zn *= z;
        s += mpq_class(census.delta(n)) * zn;
      }
      return s;
    };
    auto upper = [&](const mpq_class& z) {
      mpq_class zl = 1;
      for (long n = 0; n <= L; ++n) zl *= z;
      return partial(z) + B * zl / (1 - z);
    };
    mpq_class a, b, c, d;
    bisect(partial, true, opts.width, a, b);  // root of the truncation: >= R
    if (B == 0) {
      c = a;
      d = b;
    } else {
      bisect(upper, false, opts.width, c, d);  // root of the majorant: <= R
    }
    r.R_lo = c;
    r.R_hi = b;
    r.assumptions.push_back("delta(n) <= " + opts.delta_bound->get_str() + " for n > " + std::to_string(L));
    r.assumptions.push_back("G converges and differs from 1 on |z| < R (not verified for raw truncations)");
  }
  fill_h(r);
  return r;
}

PerronEstimate truncated_perron(const TransitionGraph& g, long index_bound) {
  TruncatedGraph t = g.truncate(index_bound);
  PerronEstimate best;
  best.nodes = t.nodes.size();
  bool have = false;
  const mpq_class tol("1/10000000000000");
  for (const auto& comp : t.components()) {
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;
    std::vector<std::vector<std::size_t>> adj(comp.size());
    bool has_edge = false;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t v : t.adj[comp[i]])
        if (auto it = local.find(v); it != local.end()) {
          adj[i].push_back(it->second);
          has_edge = true;
        }
    if (!has_edge) continue;
    // Power iteration on A + I (primitive on an irreducible block); the
    // Collatz-Wielandt quotients bracket rho(A + I) for any positive x.
    std::vector<mpz_class> x(comp.size(), 1), y(comp.size());
    mpq_class lo, hi;
    long it = 0;
    for (; it < 200000; ++it) {
      for (std::size_t i = 0; i < comp.size(); ++i) {
        y[i] = x[i];
        for (std::size_t j : adj[i]) y[i] += x[j];
      }
      lo = mpq_class(y[0], x[0]);
      lo.canonicalize();
      hi = lo;
      for (std::size_t i = 1; i < comp.size(); ++i) {
        mpq_class qi(y[i], x[i]);
        qi.canonicalize();
        lo = std::min(lo, qi);
        hi = std::max(hi, qi);
      }
      if (hi - lo < tol) break;
      std::size_t bits = 0;
      for (const auto& v : y) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
      if (bits > 256) {
        mp_bitcnt_t s = bits - 256;
        for (auto& v : y) {
          v >>= s;
          if (v < 1) v = 1;
        }
      }
      std::swap(x, y);
    }
    lo -= 1;
    hi -= 1;
    if (!have) {
      best.lower = lo;
      best.upper = hi;
      best.iterations = it;
      have = true;
    } else {
      best.lower = std::max(best.lower, lo);
      best.upper = std::max(best.upper, hi);
      best.iterations = std::max(best.iterations, it);
    }
  }
  if (have) best.value = mpq_class((best.lower + best.upper) / 2).get_d();
  return best;
}

}  // namespace padic
