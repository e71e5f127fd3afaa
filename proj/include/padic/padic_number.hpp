#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padic/valuation.hpp"

namespace padic {

// Exponent of p in a nonzero integer.
long mpz_valuation(const mpz_class& n, unsigned long p);
// v_p of a rational, +infinity for zero.
Valuation rational_valuation(const mpq_class& q, unsigned long p);
mpz_class power(unsigned long p, unsigned long k);
// Rational a/b from "a/b" or "a" (decimal).  Throws ParseError.
mpq_class parse_rational(std::string_view text);
std::string format_rational(const mpq_class& q);
bool is_prime(unsigned long p);

// An exact rational regarded as an element of Q_p.
class PadicNumber {
 public:
  PadicNumber(mpq_class value, unsigned long prime);
  PadicNumber(long value, unsigned long prime) : PadicNumber(mpq_class(value), prime) {}
  static PadicNumber parse(std::string_view text, unsigned long prime);

  const mpq_class& value() const { return value_; }
  unsigned long prime() const { return prime_; }
  bool is_zero() const { return sgn(value_) == 0; }
  Valuation valuation() const { return rational_valuation(value_, prime_); }
  AbsValue abs() const { return AbsValue::from_valuation(valuation()); }

  PadicNumber operator-() const { return PadicNumber(-value_, prime_, Trusted{}); }
  PadicNumber operator+(const PadicNumber& o) const;
  PadicNumber operator-(const PadicNumber& o) const;
  PadicNumber operator*(const PadicNumber& o) const;
  PadicNumber operator/(const PadicNumber& o) const;
  bool operator==(const PadicNumber& o) const { return prime_ == o.prime_ && value_ == o.value_; }

  // x mod p^k as an integer in [0, p^k) for x in Z_p (v(x) >= 0).
  mpz_class residue(unsigned long k) const;
  // Canonical representative of x modulo p^k Z_p: the truncated p-adic
  // expansion sum_{v <= i < k} d_i p^i (0 when v(x) >= k).
  PadicNumber truncate(long k) const;
  // Bit size of numerator plus denominator, a proxy for height.
  std::size_t bit_size() const;

  std::string to_string() const { return format_rational(value_); }

 private:
  struct Trusted {};
  PadicNumber(mpq_class value, unsigned long prime, Trusted) : value_(std::move(value)), prime_(prime) {}
  void check_prime(const PadicNumber& o) const;

  mpq_class value_;
  unsigned long prime_;
};

Valuation valuation(const PadicNumber& x);
AbsValue abs_p(const PadicNumber& x);

// Base-p digits d_0, d_1, ... of x starting at position v(x).
struct DigitExpansion {
  long start = 0;  // valuation of the first digit
  std::vector<unsigned long> digits;

  bool empty() const { return digits.empty(); }
  std::string to_string() const;  // "d0 d1 ... @ v"
};

// Empty expansion for x = 0.
DigitExpansion digits(const PadicNumber& x, std::size_t count);
PadicNumber reconstruct(const DigitExpansion& e, unsigned long p);

// A point of P^1(Q_p): finite or infinity.
class ProjectivePoint {
 public:
  ProjectivePoint(PadicNumber x) : prime_(x.prime()), value_(std::move(x)) {}  // NOLINT
  static ProjectivePoint infinity(unsigned long p) { return ProjectivePoint(p); }
  static ProjectivePoint parse(std::string_view text, unsigned long p);  // "a/b" or "inf"

  bool is_infinity() const { return !value_.has_value(); }
  const PadicNumber& value() const;  // throws on infinity
  unsigned long prime() const { return prime_; }
  bool operator==(const ProjectivePoint& o) const { return prime_ == o.prime_ && value_ == o.value_; }

  std::string to_string() const;  // "inf" for infinity

 private:
  explicit ProjectivePoint(unsigned long p) : prime_(p) {}
  unsigned long prime_;
  std::optional<PadicNumber> value_;
};

// rho(x, y) = |x - y| / (max(|x|,1) max(|y|,1)); rho(x, inf) = 1/max(|x|,1).
AbsValue spherical_distance(const ProjectivePoint& x, const ProjectivePoint& y);

}  // namespace padic
