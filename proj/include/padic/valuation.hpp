#pragma once

#include <compare>
#include <string>

namespace padic {

// v_p(x) as an integer, or the distinguished value +infinity for x = 0.
class Valuation {
 public:
  constexpr Valuation(long v) : infinite_(false), value_(v) {}  // NOLINT: implicit by design
  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return infinite_; }
  long value() const;  // throws on +infinity

  constexpr bool operator==(const Valuation& o) const {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }
  constexpr std::strong_ordering operator<=>(const Valuation& o) const {
    if (infinite_ || o.infinite_) return static_cast<int>(infinite_) <=> static_cast<int>(o.infinite_);
    return value_ <=> o.value_;
  }

  // v(xy) = v(x) + v(y); +infinity absorbs.
  constexpr Valuation operator+(const Valuation& o) const {
    if (infinite_ || o.infinite_) return infinity();
    return Valuation(value_ + o.value_);
  }

  std::string to_string() const;

 private:
  constexpr Valuation() : infinite_(true), value_(0) {}
  bool infinite_;
  long value_;
};

// |x|_p = p^exponent with exponent = -v_p(x).  Zero is its own case.
class AbsValue {
 public:
  static AbsValue zero() { return AbsValue(Valuation::infinity()); }
  static AbsValue from_exponent(long e) { return AbsValue(Valuation(-e)); }
  static AbsValue from_valuation(Valuation v) { return AbsValue(v); }

  bool is_zero() const { return v_.is_infinite(); }
  long exponent() const;  // log_p |x|; throws for zero
  Valuation valuation() const { return v_; }

  AbsValue operator*(const AbsValue& o) const { return AbsValue(v_ + o.v_); }
  bool operator==(const AbsValue& o) const { return v_ == o.v_; }
  // Larger absolute value <=> smaller valuation.
  std::strong_ordering operator<=>(const AbsValue& o) const { return o.v_ <=> v_; }

  std::string to_string(unsigned long p) const;  // "2^-3", "0"

 private:
  explicit AbsValue(Valuation v) : v_(v) {}
  Valuation v_;
};

inline AbsValue max(const AbsValue& a, const AbsValue& b) { return a < b ? b : a; }

}  // namespace padic
