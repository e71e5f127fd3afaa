#include "padic/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "padic/errors.hpp"

namespace padic {

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

Polynomial Polynomial::monomial(const mpq_class& c, std::size_t k) {
  std::vector<mpq_class> v(k + 1, mpq_class(0));
  v[k] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

const mpq_class& Polynomial::leading() const {
  if (c_.empty()) throw Error("leading coefficient of the zero polynomial");
  return c_.back();
}

mpq_class Polynomial::operator()(const mpq_class& x) const {
  mpq_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()), mpq_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * mpq_class(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpq_class> r(c_.size() + o.c_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const mpq_class& s) const {
  std::vector<mpq_class> r = c_;
  for (auto& c : r) c *= s;
  return Polynomial(std::move(r));
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<mpq_class> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return Polynomial(std::move(r));
}

Polynomial Polynomial::taylor_shift(const mpq_class& x0) const {
  // Horner with the linear polynomial (x0 + t).
  Polynomial lin(std::vector<mpq_class>{x0, 1});
  Polynomial acc;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + constant(c_[i]);
  return acc;
}

Polynomial Polynomial::compose(const Polynomial& q) const {
  Polynomial acc;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + constant(c_[i]);
  return acc;
}

Polynomial Polynomial::reversed(std::size_t n) const {
  if (degree() > static_cast<long>(n)) throw Error("reversed: n below degree");
  std::vector<mpq_class> r(n + 1, mpq_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[n - i] = c_[i];
  return Polynomial(std::move(r));
}

std::pair<Polynomial, std::size_t> Polynomial::strip_zero_root() const {
  if (is_zero()) return {*this, 0};
  std::size_t k = 0;
  while (sgn(c_[k]) == 0) ++k;
  return {Polynomial(std::vector<mpq_class>(c_.begin() + static_cast<long>(k), c_.end())), k};
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return *this * mpq_class(1 / leading());
}

std::vector<mpz_class> Polynomial::primitive_integer() const {
  mpz_class l = 1;
  for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> r;
  mpz_class g = 0;
  for (const auto& c : c_) {
    mpz_class v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    r.push_back(v);
  }
  if (g != 0)
    for (auto& v : r) v /= g;
  if (!r.empty() && r.back() < 0)
    for (auto& v : r) v = -v;
  return r;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (sgn(c_[i]) == 0) continue;
    mpq_class a = abs(c_[i]);
    os << (first ? (sgn(c_[i]) < 0 ? "-" : "") : (sgn(c_[i]) < 0 ? " - " : " + "));
    first = false;
    bool unit = a == 1;
    if (!unit || i == 0) os << a.get_str();
    if (i > 0) os << (unit ? "" : "*") << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  std::vector<mpq_class> r = a.coeffs();
  long db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<mpq_class> q(static_cast<std::size_t>(a.degree() - db + 1), mpq_class(0));
  for (long i = a.degree(); i >= db; --i) {
    mpq_class f = r[static_cast<std::size_t>(i)] / b.leading();
    q[static_cast<std::size_t>(i - db)] = f;
    for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = y;
    y = r;
  }
  return x.monic();
}

namespace {

// Prime factorisation by trial division; refuses cofactors it cannot certify.
std::map<mpz_class, unsigned> factor(mpz_class n) {
  std::map<mpz_class, unsigned> f;
  n = abs(n);
  const unsigned long limit = 1000000;
  for (unsigned long d = 2; d <= limit && mpz_class(d) * d <= n; d += (d == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d) != 0) {
      f[mpz_class(d)]++;
      n /= d;
    }
  }
  if (n > 1) {
    bool certified = mpz_class(limit) * limit >= n || mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
    if (!certified) throw UnsupportedMap("coefficient too large to factor for the rational root search");
    f[n]++;
  }
  return f;
}

std::vector<mpz_class> divisors(const mpz_class& n) {
  std::vector<mpz_class> ds{1};
  for (const auto& [p, e] : factor(n)) {
    std::size_t base = ds.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  return ds;
}

}  // namespace

std::vector<std::pair<mpq_class, int>> rational_roots(const Polynomial& p) {
  if (p.is_zero()) throw Error("rational_roots of the zero polynomial");
  std::vector<std::pair<mpq_class, int>> out;
  auto [q, zero_mult] = p.strip_zero_root();
  if (zero_mult > 0) out.emplace_back(mpq_class(0), static_cast<int>(zero_mult));
  if (q.degree() <= 0) return out;
  std::vector<mpz_class> ic = q.primitive_integer();
  std::vector<mpq_class> cand;
  for (const auto& a : divisors(ic.front()))
    for (const auto& b : divisors(ic.back())) {
      mpq_class r(a, b);
      r.canonicalize();
      cand.push_back(r);
      cand.push_back(-r);
    }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  for (const auto& r : cand) {
    Polynomial rest = q;
    int mult = 0;
    Polynomial lin(std::vector<mpq_class>{-r, 1});
    while (rest.degree() >= 1 && sgn(rest(r)) == 0) {
      rest = divmod(rest, lin).first;
      ++mult;
    }
    if (mult > 0) out.emplace_back(r, mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<mpq_class> series_divide(const Polynomial& a, const Polynomial& b, std::size_t order) {
  if (sgn(b.coeff(0)) == 0) throw Error("series_divide: denominator vanishes at 0");
  std::vector<mpq_class> out(order, mpq_class(0));
  mpq_class inv = 1 / b.coeff(0);
  for (std::size_t k = 0; k < order; ++k) {
    mpq_class s = a.coeff(k);
    for (std::size_t j = 1; j <= k && j < b.coeffs().size(); ++j) s -= b.coeffs()[j] * out[k - j];
    out[k] = s * inv;
  }
  return out;
}

}  // namespace padic
