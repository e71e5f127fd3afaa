#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padic/disk.hpp"
#include "padic/polynomial.hpp"

namespace padic {

// a*n + b.
struct AffineForm {
  long slope = 0;
  long offset = 0;

  long at(long n) const { return slope * n + offset; }
  bool operator==(const AffineForm&) const = default;
  AffineForm operator+(const AffineForm& o) const { return {slope + o.slope, offset + o.offset}; }
  AffineForm operator-(const AffineForm& o) const { return {slope - o.slope, offset - o.offset}; }
  // n -> n + k substituted.
  AffineForm shifted(long k) const { return {slope, offset + slope * k}; }
  std::string to_string() const;  // "2n+3"
  static AffineForm parse(std::string_view s);
};

// lhs(n) > rhs(n) for every integer n >= n0.
bool always_greater(const AffineForm& lhs, const AffineForm& rhs, long n0);
bool always_at_least(const AffineForm& lhs, const AffineForm& rhs, long n0);

// Laurent polynomial in X = p^n with rational coefficients.
class Laurent {
 public:
  Laurent() = default;
  Laurent(unsigned long p, std::map<long, mpq_class> terms);
  static Laurent constant(unsigned long p, const mpq_class& c);

  const std::map<long, mpq_class>& terms() const { return t_; }
  unsigned long prime() const { return p_; }
  bool is_zero() const { return t_.empty(); }

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator*(const Laurent& o) const;
  Laurent operator*(const mpq_class& s) const;
  // X -> p^k X, i.e. the value at n + k.
  Laurent shifted(long k) const;
  mpq_class at(long n) const;
  // Valuation of each term at index n as an affine form in n.
  std::vector<AffineForm> term_valuations() const;

 private:
  void trim();
  unsigned long p_ = 2;
  std::map<long, mpq_class> t_;
};

// g(L(X)) for a polynomial g.
Laurent compose(const Polynomial& g, const Laurent& L);

// If one term of L has strictly smaller valuation than every other term for
// all n >= n0, its affine valuation form.
std::optional<AffineForm> dominant_valuation(const Laurent& L, long n0);
// Every term of L has valuation >= bound(n) for all n >= n0.
bool valuation_at_least(const Laurent& L, const AffineForm& bound, long n0);

struct CenterTerm {
  mpq_class coefficient;
  AffineForm exponent;  // coefficient * p^(exponent(n))
  bool operator==(const CenterTerm&) const = default;
};

// n -> D(center(n), p^-radius(n)), center(n) a finite sum of terms c p^(an+b).
class FamilyTemplate {
 public:
  FamilyTemplate() = default;
  FamilyTemplate(unsigned long p, std::vector<CenterTerm> center, AffineForm radius);
  static FamilyTemplate parse(std::string_view center, std::string_view radius, unsigned long p);

  unsigned long prime() const { return p_; }
  const std::vector<CenterTerm>& center_terms() const { return center_; }
  const AffineForm& radius() const { return radius_; }
  PadicNumber center(long n) const;
  Disk disk(long n) const;
  Laurent center_laurent() const;

  std::string center_string() const;  // "1 + 2^(n+1) + 2^(n+2)"
  bool operator==(const FamilyTemplate& o) const {
    return p_ == o.p_ && center_ == o.center_ && radius_ == o.radius_;
  }

 private:
  unsigned long p_ = 2;
  std::vector<CenterTerm> center_;
  AffineForm radius_;
};

// Two templates describe the same disks for every n >= n0.
bool same_disks(const FamilyTemplate& a, const FamilyTemplate& b, long n0);

}  // namespace padic
