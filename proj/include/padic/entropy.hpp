#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "padic/transition_graph.hpp"

namespace padic {

// Recognized closed form for the tail of delta:
//   delta(n0 + i) = values[i mod values.size()]  for all i >= 0.
// A one-element `values` is the eventually-constant case.
struct LoopTail {
  long start = 1;
  std::vector<mpz_class> values;

  bool constant() const { return values.size() == 1; }
  std::string to_string() const;
};

struct LoopCensus {
  SymbolRef base;
  std::vector<mpz_class> counts;  // counts[n-1] = delta(n), n = 1..L
  std::optional<LoopTail> tail;
  long index_bound = 0;           // truncation used for the exact count

  long length() const { return static_cast<long>(counts.size()); }
  const mpz_class& delta(long n) const { return counts.at(static_cast<std::size_t>(n - 1)); }
};

struct CensusOptions {
  std::size_t window = 16;
};

// Exact delta(n), n <= max_len, by memoized path counting on an index
// truncation large enough to contain every loop of length <= max_len (and
// re-checked at twice that bound).
LoopCensus first_return_census(const TransitionGraph& g, const SymbolRef& base, long max_len,
                               const CensusOptions& opts = {});

// Independent count by explicit depth-first enumeration of the loops.
std::vector<mpz_class> enumerate_first_return_loops(const TransitionGraph& g, const SymbolRef& base, long max_len);

// Index bound that contains every path of length <= len starting at base.
long census_index_bound(const TransitionGraph& g, const SymbolRef& base, long len);

enum class EntropyMethod { ClosedForm, TruncationBracket };
std::string to_string(EntropyMethod m);

struct EntropyResult {
  mpq_class R_lo, R_hi;   // G(R_lo) < 1 < G(R_hi), or R_lo == R_hi exactly
  double h_lo = 0, h_hi = 0;  // -ln R, rounded outward
  EntropyMethod method = EntropyMethod::ClosedForm;
  // Integer polynomial (ascending) vanishing at R, when the closed form has one.
  std::vector<mpz_class> characteristic;
  std::vector<std::string> assumptions;

  mpq_class width() const { return R_hi - R_lo; }
  double R_mid() const { return mpq_class((R_lo + R_hi) / 2).get_d(); }
  double h_mid() const { return (h_lo + h_hi) / 2; }
};

struct EntropyOptions {
  mpq_class width = mpq_class("1/1000000000000");  // 1e-12
  // Certified bound B >= delta(n) for every n beyond the census, used when
  // the tail is not recognized.
  std::optional<mpz_class> delta_bound;
};

EntropyResult gurevich_entropy(const LoopCensus& census, const EntropyOptions& opts = {});

// Exact evaluation of G(z) = sum delta(n) z^n from the closed form.
mpq_class loop_series(const LoopCensus& census, const mpq_class& z);

struct PerronEstimate {
  mpq_class lower, upper;  // Collatz-Wielandt bounds for the spectral radius
  double value = 0;
  long iterations = 0;
  std::size_t nodes = 0;
};

// Spectral radius of the adjacency matrix of the truncation at index_bound
// (maximum over its strongly connected blocks).
PerronEstimate truncated_perron(const TransitionGraph& g, long index_bound);

}  // namespace padic
