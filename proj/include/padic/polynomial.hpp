#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace padic {

// Dense univariate polynomial over Q, coefficients in ascending order with
// no trailing zeros.  The zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpq_class> coeffs);
  static Polynomial constant(const mpq_class& c) { return Polynomial(std::vector<mpq_class>{c}); }
  static Polynomial x() { return Polynomial(std::vector<mpq_class>{0, 1}); }
  static Polynomial monomial(const mpq_class& c, std::size_t k);

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(std::size_t k) const { return k < c_.size() ? c_[k] : mpq_class(0); }
  const mpq_class& leading() const;

  mpq_class operator()(const mpq_class& x) const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const mpq_class& s) const;
  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

  Polynomial derivative() const;
  // p(x0 + t) as a polynomial in t.
  Polynomial taylor_shift(const mpq_class& x0) const;
  // p(q(x)).
  Polynomial compose(const Polynomial& q) const;
  // t^n p(1/t) for n >= degree.
  Polynomial reversed(std::size_t n) const;
  // Divide out t^k where k is the order of vanishing at 0.
  std::pair<Polynomial, std::size_t> strip_zero_root() const;
  Polynomial monic() const;
  // Primitive integer multiple (content removed, positive leading term).
  std::vector<mpz_class> primitive_integer() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Distinct rational roots with multiplicities, ascending.  Uses the rational
// root theorem on the primitive integer form; integers beyond trial-division
// reach throw UnsupportedMap.
std::vector<std::pair<mpq_class, int>> rational_roots(const Polynomial& p);

// Truncated power series quotient a/b to `order` terms (b(0) != 0).
std::vector<mpq_class> series_divide(const Polynomial& a, const Polynomial& b, std::size_t order);

}  // namespace padic
