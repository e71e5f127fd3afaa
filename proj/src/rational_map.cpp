#include "padic/rational_map.hpp"

#include <algorithm>

#include "padic/errors.hpp"

namespace padic {

RationalMap::RationalMap(Polynomial numerator, Polynomial denominator, unsigned long prime)
    : num_(std::move(numerator)), den_(std::move(denominator)), prime_(prime) {
  if (!is_prime(prime_)) throw Error("not a prime: " + std::to_string(prime_));
  if (den_.is_zero()) throw Error("rational map with zero denominator");
  if (!num_.is_zero() && gcd(num_, den_).degree() > 0) throw Error("numerator and denominator share a root");
  mpq_class lead = den_.leading();
  num_ = num_ * mpq_class(1 / lead);
  den_ = den_ * mpq_class(1 / lead);
}

long RationalMap::degree() const { return std::max(num_.degree(), den_.degree()); }

Polynomial RationalMap::as_polynomial() const {
  if (!is_polynomial()) throw Error("not a polynomial map");
  return num_ * mpq_class(1 / den_.coeff(0));
}

PadicNumber RationalMap::operator()(const PadicNumber& x) const {
  mpq_class d = den_(x.value());
  if (sgn(d) == 0) throw Error("evaluation at a pole: " + x.to_string());
  return PadicNumber(mpq_class(num_(x.value()) / d), prime_);
}

ProjectivePoint RationalMap::operator()(const ProjectivePoint& x) const {
  if (x.is_infinity()) {
    if (num_.degree() > den_.degree()) return ProjectivePoint::infinity(prime_);
    if (num_.degree() < den_.degree()) return PadicNumber(0, prime_);
    return PadicNumber(mpq_class(num_.leading() / den_.leading()), prime_);
  }
  if (sgn(den_(x.value().value())) == 0) return ProjectivePoint::infinity(prime_);
  return (*this)(x.value());
}

std::string RationalMap::to_string() const {
  if (is_polynomial()) return as_polynomial().to_string("z");
  return "(" + num_.to_string("z") + ") / (" + den_.to_string("z") + ")";
}

ProjectivePoint evaluate(const RationalMap& f, const ProjectivePoint& x) { return f(x); }

namespace {

// Cancel the common factor of a/b.
RationalMap reduced(const Polynomial& a, const Polynomial& b, unsigned long p) {
  if (a.is_zero()) return RationalMap(a, Polynomial::constant(1), p);
  Polynomial g = gcd(a, b);
  if (g.degree() <= 0) return RationalMap(a, b, p);
  return RationalMap(divmod(a, g).first, divmod(b, g).first, p);
}

}  // namespace

RationalMap derivative(const RationalMap& f) {
  const Polynomial& n = f.numerator();
  const Polynomial& d = f.denominator();
  if (f.is_polynomial()) return RationalMap::polynomial(f.as_polynomial().derivative(), f.prime());
  return reduced(n.derivative() * d - n * d.derivative(), d * d, f.prime());
}

RationalMap compose(const RationalMap& f, const RationalMap& g) {
  if (f.prime() != g.prime()) throw Error("compose: mixed primes");
  if (f.is_polynomial() && g.is_polynomial())
    return RationalMap::polynomial(f.as_polynomial().compose(g.as_polynomial()), f.prime());
  long d = f.degree();
  const Polynomial& P = g.numerator();
  const Polynomial& Q = g.denominator();
  std::vector<Polynomial> ppow{Polynomial::constant(1)}, qpow{Polynomial::constant(1)};
  for (long i = 1; i <= d; ++i) {
    ppow.push_back(ppow.back() * P);
    qpow.push_back(qpow.back() * Q);
  }
  Polynomial a, b;
  for (long i = 0; i <= d; ++i) {
    Polynomial term = ppow[static_cast<std::size_t>(i)] * qpow[static_cast<std::size_t>(d - i)];
    a = a + term * f.numerator().coeff(static_cast<std::size_t>(i));
    b = b + term * f.denominator().coeff(static_cast<std::size_t>(i));
  }
  return reduced(a, b, f.prime());
}

RationalMap iterate(const RationalMap& f, unsigned n) {
  if (n == 0) return RationalMap::polynomial(Polynomial::x(), f.prime());
  RationalMap r = f;
  for (unsigned i = 1; i < n; ++i) r = compose(f, r);
  return r;
}

std::vector<mpq_class> local_expansion(const RationalMap& f, const ProjectivePoint& x, std::size_t order) {
  Polynomial a, b;
  if (x.is_infinity()) {
    auto d = static_cast<std::size_t>(f.degree());
    a = f.numerator().reversed(d);
    b = f.denominator().reversed(d);
  } else {
    a = f.numerator().taylor_shift(x.value().value());
    b = f.denominator().taylor_shift(x.value().value());
  }
  ProjectivePoint y = f(x);
  if (y.is_infinity()) {
    std::swap(a, b);
  } else {
    a = a - b * y.value().value();
  }
  auto [a0, ka] = a.strip_zero_root();
  auto [b0, kb] = b.strip_zero_root();
  std::vector<mpq_class> out(order, mpq_class(0));
  if (a.is_zero()) return out;  // constant map
  if (ka <= kb) throw Error("local_expansion: chart bookkeeping failed");
  std::size_t shift = ka - kb;
  if (shift >= order) return out;
  std::vector<mpq_class> s = series_divide(a0, b0, order - shift);
  for (std::size_t i = 0; i < s.size(); ++i) out[i + shift] = s[i];
  return out;
}

std::vector<mpq_class> taylor_recenter(const RationalMap& f, const PadicNumber& x0, std::size_t order) {
  const mpq_class& c = x0.value();
  if (sgn(f.denominator()(c)) == 0) throw Error("taylor_recenter: pole at " + x0.to_string());
  if (f.is_polynomial()) {
    std::vector<mpq_class> out = f.as_polynomial().taylor_shift(c).coeffs();
    out.resize(static_cast<std::size_t>(std::max<long>(f.degree(), 0)) + 1, mpq_class(0));
    return out;
  }
  return series_divide(f.numerator().taylor_shift(c), f.denominator().taylor_shift(c), order);
}

int local_degree(const RationalMap& f, const ProjectivePoint& x) {
  auto order = static_cast<std::size_t>(f.degree()) + 2;
  std::vector<mpq_class> h = local_expansion(f, x, order);
  for (std::size_t k = 1; k < h.size(); ++k)
    if (sgn(h[k]) != 0) return static_cast<int>(k);
  throw Error("local_degree: constant map");
}

namespace {

CriticalPoint annotate(const RationalMap& f, const ProjectivePoint& x) {
  CriticalPoint c{x};
  c.local_degree = local_degree(f, x);
  auto m = static_cast<std::size_t>(c.local_degree);
  c.kind = (static_cast<unsigned long>(c.local_degree) % f.prime() == 0) ? CriticalKind::Wild : CriticalKind::Tame;
  c.leading_abs = PadicNumber(local_expansion(f, x, m + 1)[m], f.prime()).abs();
  return c;
}

}  // namespace

CriticalPointReport rational_critical_points(const RationalMap& f) {
  if (f.degree() < 1) throw Error("critical points of a constant map");
  CriticalPointReport rep;
  rep.expected = 2 * static_cast<int>(f.degree()) - 2;
  std::vector<ProjectivePoint> cand;
  RationalMap df = derivative(f);
  if (!df.numerator().is_zero())
    for (const auto& [r, mult] : rational_roots(df.numerator())) cand.emplace_back(PadicNumber(r, f.prime()));
  // Multiple poles are critical as well.
  for (const auto& [r, mult] : rational_roots(f.denominator()))
    if (mult > 1) cand.emplace_back(PadicNumber(r, f.prime()));
  cand.push_back(ProjectivePoint::infinity(f.prime()));
  for (const auto& x : cand) {
    CriticalPoint c = annotate(f, x);
    if (c.local_degree < 2) continue;
    rep.found += c.local_degree - 1;
    rep.points.push_back(c);
  }
  return rep;
}

std::vector<ProjectivePoint> rational_fixed_points(const RationalMap& f) {
  std::vector<ProjectivePoint> out;
  Polynomial g = f.numerator() - f.denominator() * Polynomial::x();
  if (!g.is_zero())
    for (const auto& [r, mult] : rational_roots(g)) out.emplace_back(PadicNumber(r, f.prime()));
  if (f(ProjectivePoint::infinity(f.prime())).is_infinity()) out.push_back(ProjectivePoint::infinity(f.prime()));
  return out;
}

mpq_class cycle_multiplier(const RationalMap& f, const std::vector<ProjectivePoint>& cycle) {
  mpq_class m = 1;
  for (const auto& x : cycle) m *= local_expansion(f, x, 2)[1];
  return m;
}

}  // namespace padic
