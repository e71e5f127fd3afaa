#pragma once

#include <random>
#include <string>

#include "padic/rational_map.hpp"

namespace fixtures {

// f(x) = 9/4 x (x - 1)^2 over Q_2.
inline padic::RationalMap stock_map() {
  using padic::Polynomial;
  Polynomial num(std::vector<mpq_class>{mpq_class(0), mpq_class(9, 4), mpq_class(-9, 2), mpq_class(9, 4)});
  return padic::RationalMap::polynomial(num, 2);
}

inline padic::RationalMap polynomial_map(std::vector<mpq_class> coeffs, unsigned long p) {
  return padic::RationalMap::polynomial(padic::Polynomial(std::move(coeffs)), p);
}

// Random rational with numerator and denominator of at most `bits` bits.
inline mpq_class random_rational(std::mt19937_64& rng, int bits = 40) {
  std::uniform_int_distribution<long long> num(-(1LL << bits), 1LL << bits);
  std::uniform_int_distribution<long long> den(1, 1LL << bits);
  mpq_class q(mpz_class(std::to_string(num(rng))), mpz_class(std::to_string(den(rng))));
  q.canonicalize();
  return q;
}

inline mpq_class random_integer(std::mt19937_64& rng, int bits = 40) {
  std::uniform_int_distribution<long long> num(0, 1LL << bits);
  return mpq_class(mpz_class(std::to_string(num(rng))));
}

}  // namespace fixtures
