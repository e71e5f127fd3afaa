#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padic/padic_number.hpp"
#include "padic/polynomial.hpp"

namespace padic {

// phi = N / D over Q, viewed as a self-map of P^1(Q_p).
class RationalMap {
 public:
  RationalMap(Polynomial numerator, Polynomial denominator, unsigned long prime);
  static RationalMap polynomial(Polynomial p, unsigned long prime) {
    return RationalMap(std::move(p), Polynomial::constant(1), prime);
  }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  unsigned long prime() const { return prime_; }
  long degree() const;
  bool is_polynomial() const { return den_.degree() == 0; }
  // The polynomial N/D when D is constant.
  Polynomial as_polynomial() const;

  ProjectivePoint operator()(const ProjectivePoint& x) const;
  PadicNumber operator()(const PadicNumber& x) const;  // throws at poles

  std::string to_string() const;

 private:
  Polynomial num_, den_;
  unsigned long prime_;
};

ProjectivePoint evaluate(const RationalMap& f, const ProjectivePoint& x);
RationalMap derivative(const RationalMap& f);
// f o g.
RationalMap compose(const RationalMap& f, const RationalMap& g);
RationalMap iterate(const RationalMap& f, unsigned n);

// Coefficients h_0..h_{order-1} of chart_{f(x)} o f o chart_x^{-1} at t = 0,
// where the chart at a finite point a is z -> z - a and at infinity z -> 1/z.
// Always h_0 = 0; the first nonzero index is the local degree.
std::vector<mpq_class> local_expansion(const RationalMap& f, const ProjectivePoint& x, std::size_t order);

// a_k = f^(k)(x0)/k! for k = 0..deg (polynomials) or k < order (rational maps).
std::vector<mpq_class> taylor_recenter(const RationalMap& f, const PadicNumber& x0, std::size_t order = 32);

enum class CriticalKind { Tame, Wild };

struct CriticalPoint {
  ProjectivePoint location;
  int local_degree = 2;
  CriticalKind kind = CriticalKind::Tame;
  // |f^(m)(c)/m!| in the local charts.
  AbsValue leading_abs = AbsValue::zero();
};

struct CriticalPointReport {
  std::vector<CriticalPoint> points;
  int expected = 0;  // 2 deg - 2, counted with multiplicity m - 1
  int found = 0;
  bool complete() const { return expected == found; }
};

// Local degree of f at x (1 for non-critical points).
int local_degree(const RationalMap& f, const ProjectivePoint& x);
CriticalPointReport rational_critical_points(const RationalMap& f);

// Rational fixed points (including infinity when fixed).
std::vector<ProjectivePoint> rational_fixed_points(const RationalMap& f);
// Multiplier of the cycle through the given points, in local charts.
mpq_class cycle_multiplier(const RationalMap& f, const std::vector<ProjectivePoint>& cycle);

}  // namespace padic
