#include "padic/padic_number.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "padic/errors.hpp"

namespace padic {

long Valuation::value() const {
  if (infinite_) throw Error("valuation of zero is +infinity");
  return value_;
}

std::string Valuation::to_string() const { return infinite_ ? "+inf" : std::to_string(value_); }

long AbsValue::exponent() const {
  if (is_zero()) throw Error("absolute value is zero");
  return -v_.value();
}

std::string AbsValue::to_string(unsigned long p) const {
  if (is_zero()) return "0";
  return std::to_string(p) + "^" + std::to_string(exponent());
}

long mpz_valuation(const mpz_class& n, unsigned long p) {
  if (sgn(n) == 0) throw Error("mpz_valuation of zero");
  mpz_class rest;
  mpz_class pp(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

Valuation rational_valuation(const mpq_class& q, unsigned long p) {
  if (sgn(q) == 0) return Valuation::infinity();
  return Valuation(mpz_valuation(q.get_num(), p) - mpz_valuation(q.get_den(), p));
}

mpz_class power(unsigned long p, unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k);
  return r;
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
  std::string t = trim(text);
  auto slash = t.find('/');
  std::string num = slash == std::string::npos ? t : trim(t.substr(0, slash));
  std::string den = slash == std::string::npos ? "1" : trim(t.substr(slash + 1));
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("not a rational literal: '" + t + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (sgn(d) == 0) throw ParseError("zero denominator in '" + t + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const mpq_class& q) { return q.get_str(10); }

PadicNumber::PadicNumber(mpq_class value, unsigned long prime) : value_(std::move(value)), prime_(prime) {
  if (!is_prime(prime_)) throw Error("not a prime: " + std::to_string(prime_));
  value_.canonicalize();
}

PadicNumber PadicNumber::parse(std::string_view text, unsigned long prime) {
  return PadicNumber(parse_rational(text), prime);
}

void PadicNumber::check_prime(const PadicNumber& o) const {
  if (prime_ != o.prime_) throw Error("mixed primes in p-adic arithmetic");
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
  check_prime(o);
  return PadicNumber(mpq_class(value_ + o.value_), prime_, Trusted{});
}
PadicNumber PadicNumber::operator-(const PadicNumber& o) const {
  check_prime(o);
  return PadicNumber(mpq_class(value_ - o.value_), prime_, Trusted{});
}
PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
  check_prime(o);
  return PadicNumber(mpq_class(value_ * o.value_), prime_, Trusted{});
}
PadicNumber PadicNumber::operator/(const PadicNumber& o) const {
  check_prime(o);
  if (o.is_zero()) throw Error("division by zero");
  return PadicNumber(mpq_class(value_ / o.value_), prime_, Trusted{});
}

mpz_class PadicNumber::residue(unsigned long k) const {
  mpz_class m = power(prime_, k);
  if (is_zero()) return 0;
  if (valuation().value() < 0) throw Error("residue of a non-integral p-adic number");
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), value_.get_den().get_mpz_t(), m.get_mpz_t()) == 0) {
    if (m == 1) return 0;
    throw Error("denominator not invertible mod p^k");
  }
  mpz_class r = (value_.get_num() * inv) % m;
  if (r < 0) r += m;
  return r;
}

PadicNumber PadicNumber::truncate(long k) const {
  if (is_zero()) return *this;
  long v = valuation().value();
  if (v >= k) return PadicNumber(mpq_class(0), prime_, Trusted{});
  // x = p^v * u with u a unit; keep u mod p^(k - v).
  mpq_class u = value_;
  if (v > 0) u /= mpq_class(power(prime_, static_cast<unsigned long>(v)));
  if (v < 0) u *= mpq_class(power(prime_, static_cast<unsigned long>(-v)));
  mpz_class r = PadicNumber(u, prime_, Trusted{}).residue(static_cast<unsigned long>(k - v));
  mpq_class out(r);
  if (v > 0) out *= mpq_class(power(prime_, static_cast<unsigned long>(v)));
  if (v < 0) out /= mpq_class(power(prime_, static_cast<unsigned long>(-v)));
  out.canonicalize();
  return PadicNumber(out, prime_, Trusted{});
}

std::size_t PadicNumber::bit_size() const {
  return mpz_sizeinbase(value_.get_num_mpz_t(), 2) + mpz_sizeinbase(value_.get_den_mpz_t(), 2);
}

Valuation valuation(const PadicNumber& x) { return x.valuation(); }
AbsValue abs_p(const PadicNumber& x) { return x.abs(); }

std::string DigitExpansion::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < digits.size(); ++i) os << (i ? " " : "") << digits[i];
  os << " @ " << start;
  return os.str();
}

DigitExpansion digits(const PadicNumber& x, std::size_t count) {
  DigitExpansion e;
  if (x.is_zero()) return e;
  e.start = x.valuation().value();
  // truncate() returns p^start * (unit residue); strip the p-power.
  mpq_class scaled = x.truncate(e.start + static_cast<long>(count)).value();
  if (e.start > 0) scaled /= mpq_class(power(x.prime(), static_cast<unsigned long>(e.start)));
  if (e.start < 0) scaled *= mpq_class(power(x.prime(), static_cast<unsigned long>(-e.start)));
  mpz_class r = scaled.get_num();
  for (std::size_t i = 0; i < count; ++i) {
    mpz_class d = r % x.prime();
    e.digits.push_back(d.get_ui());
    r /= x.prime();
  }
  return e;
}

PadicNumber reconstruct(const DigitExpansion& e, unsigned long p) {
  mpq_class sum = 0;
  for (std::size_t i = e.digits.size(); i-- > 0;) sum = sum * p + e.digits[i];
  if (e.start > 0) sum *= mpq_class(power(p, static_cast<unsigned long>(e.start)));
  if (e.start < 0) sum /= mpq_class(power(p, static_cast<unsigned long>(-e.start)));
  return PadicNumber(sum, p);
}

ProjectivePoint ProjectivePoint::parse(std::string_view text, unsigned long p) {
  std::string t = trim(text);
  if (t == "inf" || t == "infinity" || t == "∞") return infinity(p);
  return ProjectivePoint(PadicNumber::parse(t, p));
}

const PadicNumber& ProjectivePoint::value() const {
  if (!value_) throw Error("the point at infinity has no finite value");
  return *value_;
}

std::string ProjectivePoint::to_string() const { return value_ ? value_->to_string() : "inf"; }

namespace {
// max(|x|, 1) as an absolute value.
AbsValue clamp_one(const PadicNumber& x) { return max(x.abs(), AbsValue::from_exponent(0)); }
}  // namespace

AbsValue spherical_distance(const ProjectivePoint& x, const ProjectivePoint& y) {
  if (x.prime() != y.prime()) throw Error("mixed primes in spherical_distance");
  if (x.is_infinity() && y.is_infinity()) return AbsValue::zero();
  if (x.is_infinity() || y.is_infinity()) {
    const PadicNumber& f = x.is_infinity() ? y.value() : x.value();
    return AbsValue::from_exponent(-clamp_one(f).exponent());
  }
  const PadicNumber& a = x.value();
  const PadicNumber& b = y.value();
  AbsValue d = (a - b).abs();
  if (d.is_zero()) return d;
  return AbsValue::from_exponent(d.exponent() - clamp_one(a).exponent() - clamp_one(b).exponent());
}

}  // namespace padic
