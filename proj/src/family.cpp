#include "padic/family.hpp"

#include <cctype>
#include <sstream>

#include "padic/errors.hpp"

namespace padic {

std::string AffineForm::to_string() const {
  std::ostringstream os;
  if (slope == 0) {
    os << offset;
    return os.str();
  }
  if (slope == -1)
    os << "-";
  else if (slope != 1)
    os << slope;
  os << "n";
  if (offset > 0) os << "+" << offset;
  if (offset < 0) os << offset;
  return os.str();
}

AffineForm AffineForm::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty affine form");
  AffineForm f;
  auto npos = s.find('n');
  auto to_long = [&](const std::string& t, long dflt) -> long {
    if (t.empty() || t == "+") return dflt;
    if (t == "-") return -dflt;
    try {
      std::size_t used = 0;
      long v = std::stol(t, &used);
      if (used != t.size()) throw ParseError("bad affine form '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      throw ParseError("bad affine form '" + s + "'");
    }
  };
  if (npos == std::string::npos) {
    f.offset = to_long(s, 0);
    return f;
  }
  std::string coef = s.substr(0, npos);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  f.slope = to_long(coef, 1);
  std::string rest = s.substr(npos + 1);
  f.offset = rest.empty() ? 0 : to_long(rest, 0);
  return f;
}

bool always_greater(const AffineForm& lhs, const AffineForm& rhs, long n0) {
  AffineForm d = lhs - rhs;
  return d.slope >= 0 && d.at(n0) > 0;
}

bool always_at_least(const AffineForm& lhs, const AffineForm& rhs, long n0) {
  AffineForm d = lhs - rhs;
  return d.slope >= 0 && d.at(n0) >= 0;
}

Laurent::Laurent(unsigned long p, std::map<long, mpq_class> terms) : p_(p), t_(std::move(terms)) { trim(); }

Laurent Laurent::constant(unsigned long p, const mpq_class& c) { return Laurent(p, {{0, c}}); }

void Laurent::trim() {
  for (auto it = t_.begin(); it != t_.end();) {
    it->second.canonicalize();
    if (sgn(it->second) == 0)
      it = t_.erase(it);
    else
      ++it;
  }
}

Laurent Laurent::operator+(const Laurent& o) const {
  std::map<long, mpq_class> r = t_;
  for (const auto& [e, c] : o.t_) r[e] += c;
  return Laurent(p_, std::move(r));
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + o * mpq_class(-1); }

Laurent Laurent::operator*(const Laurent& o) const {
  std::map<long, mpq_class> r;
  for (const auto& [e1, c1] : t_)
    for (const auto& [e2, c2] : o.t_) r[e1 + e2] += c1 * c2;
  return Laurent(p_, std::move(r));
}

Laurent Laurent::operator*(const mpq_class& s) const {
  std::map<long, mpq_class> r = t_;
  for (auto& [e, c] : r) c *= s;
  return Laurent(p_, std::move(r));
}

namespace {
mpq_class p_power(unsigned long p, long e) {
  if (e >= 0) return mpq_class(power(p, static_cast<unsigned long>(e)));
  return mpq_class(mpz_class(1), power(p, static_cast<unsigned long>(-e)));
}
}  // namespace

Laurent Laurent::shifted(long k) const {
  std::map<long, mpq_class> r;
  for (const auto& [e, c] : t_) r[e] = c * p_power(p_, e * k);
  return Laurent(p_, std::move(r));
}

mpq_class Laurent::at(long n) const {
  mpq_class s = 0;
  for (const auto& [e, c] : t_) s += c * p_power(p_, e * n);
  return s;
}

std::vector<AffineForm> Laurent::term_valuations() const {
  std::vector<AffineForm> out;
  for (const auto& [e, c] : t_) out.push_back({e, rational_valuation(c, p_).value()});
  return out;
}

Laurent compose(const Polynomial& g, const Laurent& L) {
  Laurent acc(L.prime(), {});
  for (std::size_t i = g.coeffs().size(); i-- > 0;) acc = acc * L + Laurent::constant(L.prime(), g.coeffs()[i]);
  return acc;
}

std::optional<AffineForm> dominant_valuation(const Laurent& L, long n0) {
  auto v = L.term_valuations();
  for (std::size_t i = 0; i < v.size(); ++i) {
    bool dom = true;
    for (std::size_t j = 0; j < v.size() && dom; ++j)
      if (j != i && !always_greater(v[j], v[i], n0)) dom = false;
    if (dom) return v[i];
  }
  return std::nullopt;
}

bool valuation_at_least(const Laurent& L, const AffineForm& bound, long n0) {
  for (const auto& v : L.term_valuations())
    if (!always_at_least(v, bound, n0)) return false;
  return true;
}

FamilyTemplate::FamilyTemplate(unsigned long p, std::vector<CenterTerm> center, AffineForm radius)
    : p_(p), center_(std::move(center)), radius_(radius) {}

PadicNumber FamilyTemplate::center(long n) const {
  mpq_class s = 0;
  for (const auto& t : center_) s += t.coefficient * p_power(p_, t.exponent.at(n));
  return PadicNumber(s, p_);
}

Disk FamilyTemplate::disk(long n) const { return Disk::closed_ball(center(n), radius_.at(n)); }

Laurent FamilyTemplate::center_laurent() const {
  std::map<long, mpq_class> m;
  for (const auto& t : center_) m[t.exponent.slope] += t.coefficient * p_power(p_, t.exponent.offset);
  return Laurent(p_, std::move(m));
}

std::string FamilyTemplate::center_string() const {
  if (center_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < center_.size(); ++i) {
    const auto& t = center_[i];
    mpq_class a = abs(t.coefficient);
    bool neg = sgn(t.coefficient) < 0;
    if (i == 0)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    bool pure_constant = t.exponent.slope == 0 && t.exponent.offset == 0;
    if (pure_constant) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << p_ << "^(" << t.exponent.to_string() << ")";
  }
  return os.str();
}

FamilyTemplate FamilyTemplate::parse(std::string_view center, std::string_view radius, unsigned long p) {
  std::string s;
  for (char c : center)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  std::vector<CenterTerm> terms;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    int depth = 0;
    while (j < s.size() && !(depth == 0 && (s[j] == '+' || s[j] == '-'))) {
      if (s[j] == '(') ++depth;
      if (s[j] == ')') --depth;
      ++j;
    }
    std::string tok = s.substr(i, j - i);
    if (tok.empty()) throw ParseError("bad center pattern '" + std::string(center) + "'");
    std::string base = std::to_string(p) + "^";
    auto star = tok.find('*');
    std::string coef = star == std::string::npos ? "" : tok.substr(0, star);
    std::string pw = star == std::string::npos ? tok : tok.substr(star + 1);
    CenterTerm t;
    if (pw.rfind(base, 0) == 0) {
      std::string e = pw.substr(base.size());
      if (e.size() >= 2 && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
      t.exponent = AffineForm::parse(e);
      t.coefficient = coef.empty() ? mpq_class(1) : parse_rational(coef);
    } else {
      if (!coef.empty()) throw ParseError("bad center term '" + tok + "'");
      t.coefficient = parse_rational(pw);
    }
    t.coefficient *= sign;
    terms.push_back(t);
    i = j;
  }
  return FamilyTemplate(p, std::move(terms), AffineForm::parse(radius));
}

bool same_disks(const FamilyTemplate& a, const FamilyTemplate& b, long n0) {
  if (a.prime() != b.prime() || !(a.radius() == b.radius())) return false;
  return valuation_at_least(a.center_laurent() - b.center_laurent(), a.radius(), n0);
}

}  // namespace padic
