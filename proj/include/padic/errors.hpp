#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace padic {

// Base of everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// The map (or one of its critical points) is outside what the automated
// constructions handle: non-rational critical points, non-prefixed orbits,
// no periodic structure near a special point, ...
class UnsupportedMap : public Error {
 public:
  using Error::Error;
};

// An iteration budget ran out before a certificate was found.
class Undetermined : public Error {
 public:
  using Error::Error;
};

// A bounded disk decomposition hit its depth bound.
class Undecided : public Error {
 public:
  using Error::Error;
};

// A partition model failed one of its compatibility checks.
class CompatibilityError : public Error {
 public:
  CompatibilityError(const std::string& symbol, const std::string& what)
      : Error("compatibility failure at " + symbol + ": " + what), symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

class InadmissibleWord : public Error {
 public:
  InadmissibleWord(std::size_t position, const std::string& what)
      : Error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// The orbit left the Julia region: the point was Fatou.
class LeftJuliaRegion : public Error {
 public:
  LeftJuliaRegion(std::size_t step, const std::string& what) : Error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class InsufficientLength : public Error {
 public:
  InsufficientLength(long achievable, const std::string& what)
      : Error(what), achievable_(achievable) {}
  long achievable_precision() const { return achievable_; }

 private:
  long achievable_;
};

}  // namespace padic
