#include "padic/disk.hpp"

#include <algorithm>

#include "padic/errors.hpp"

namespace padic {

Disk::Disk(DiskForm form, PadicNumber center, long radius_exp, ProjectivePoint pt)
    : form_(form), prime_(center.prime()), center_(std::move(center)), radius_exp_(radius_exp), point_(std::move(pt)) {}

Disk Disk::closed_ball(const PadicNumber& center, long radius_exp) {
  PadicNumber c = center.truncate(radius_exp);
  return Disk(DiskForm::Ball, c, radius_exp, ProjectivePoint(c));
}

Disk Disk::open_ball(const PadicNumber& center, long radius_exp) { return closed_ball(center, radius_exp + 1); }

Disk Disk::point(const ProjectivePoint& x) {
  PadicNumber c = x.is_infinity() ? PadicNumber(0, x.prime()) : x.value();
  return Disk(DiskForm::Point, c, 0, x);
}

Disk Disk::complement_of(const Disk& ball) {
  if (!ball.is_ball()) throw Error("complement_of expects a ball");
  return Disk(DiskForm::Complement, ball.center_, ball.radius_exp_, ball.point_);
}

const PadicNumber& Disk::center() const {
  if (form_ == DiskForm::Point) return point_.value();
  return center_;
}

long Disk::radius_exp() const {
  if (form_ == DiskForm::Point) throw Error("a singleton has no radius exponent");
  return radius_exp_;
}

const ProjectivePoint& Disk::point_value() const {
  if (form_ != DiskForm::Point) throw Error("not a singleton disk");
  return point_;
}

bool Disk::operator==(const Disk& o) const {
  if (form_ != o.form_ || prime_ != o.prime_) return false;
  if (form_ == DiskForm::Point) return point_ == o.point_;
  return radius_exp_ == o.radius_exp_ && center_ == o.center_;
}

std::size_t Disk::hash() const {
  std::size_t h = std::hash<long>()(radius_exp_) * 31 + static_cast<std::size_t>(form_);
  if (form_ == DiskForm::Point && point_.is_infinity()) return h ^ 0x9e3779b9u;
  const mpq_class& q = form_ == DiskForm::Point ? point_.value().value() : center_.value();
  h ^= mpz_get_ui(q.get_num_mpz_t()) * 1000003u + mpz_get_ui(q.get_den_mpz_t()) + static_cast<std::size_t>(sgn(q) + 1);
  return h;
}

namespace {

std::string power_text(unsigned long p, long k) { return std::to_string(p) + "^" + std::to_string(k); }

std::string ball_text(const PadicNumber& c, long k) {
  std::string z = power_text(c.prime(), k) + " * Z";
  if (c.is_zero()) return z;
  return c.to_string() + " + " + z;
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (ch != ' ' && ch != '\t' && ch != '\n') out.push_back(ch);
  return out;
}

long parse_exponent(const std::string& s) {
  std::string t = s;
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  try {
    std::size_t used = 0;
    long k = std::stol(t, &used);
    if (used != t.size()) throw ParseError("bad exponent '" + s + "'");
    return k;
  } catch (const std::logic_error&) {
    throw ParseError("bad exponent '" + s + "'");
  }
}

// "p^k" -> k
long parse_power(const std::string& s, unsigned long p) {
  std::string prefix = std::to_string(p) + "^";
  if (s == std::to_string(p)) return 1;  // "p * Z"
  if (s.rfind(prefix, 0) != 0) throw ParseError("expected a power of " + std::to_string(p) + " in '" + s + "'");
  return parse_exponent(s.substr(prefix.size()));
}

}  // namespace

std::string Disk::to_string() const {
  switch (form_) {
    case DiskForm::Point:
      return "point(" + point_.to_string() + ")";
    case DiskForm::Ball:
      return ball_text(center_, radius_exp_);
    case DiskForm::Complement:
      return "P1 \\ (" + ball_text(center_, radius_exp_) + ")";
  }
  return {};
}

Disk Disk::parse(std::string_view text, unsigned long p) {
  std::string s = strip_spaces(text);
  if (s.rfind("P1\\", 0) == 0) {
    std::string inner = s.substr(3);
    if (inner.size() >= 2 && inner.front() == '(' && inner.back() == ')') inner = inner.substr(1, inner.size() - 2);
    return complement_of(parse(inner, p));
  }
  if (s.rfind("point(", 0) == 0 && s.back() == ')')
    return point(ProjectivePoint::parse(s.substr(6, s.size() - 7), p));
  if (s.rfind("closed(", 0) == 0 && s.back() == ')') {
    std::string args = s.substr(7, s.size() - 8);
    auto comma = args.find(',');
    if (comma == std::string::npos) throw ParseError("closed(c, p^-k) needs two arguments");
    long k = parse_power(args.substr(comma + 1), p);
    return closed_ball(PadicNumber::parse(args.substr(0, comma), p), -k);
  }
  if (s.empty() || s.back() != 'Z') throw ParseError("unrecognised disk literal '" + std::string(text) + "'");
  std::string body = s.substr(0, s.size() - 1);
  if (!body.empty() && body.back() == '*') body.pop_back();
  if (body.empty()) return integers(p);
  if (body.back() == '+') return closed_ball(PadicNumber::parse(body.substr(0, body.size() - 1), p), 0);
  const std::string base = std::to_string(p);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 0;) {
    const std::size_t after = i + 1 + base.size();
    if (body[i] == '+' && body.compare(i + 1, base.size(), base) == 0 && (after == body.size() || body[after] == '^')) {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return closed_ball(PadicNumber(0, p), parse_power(body, p));
  return closed_ball(PadicNumber::parse(body.substr(0, split), p), parse_power(body.substr(split + 1), p));
}

namespace {

bool ball_contains_point(const Disk& ball, const ProjectivePoint& x) {
  if (x.is_infinity()) return false;
  return (x.value() - ball.center()).valuation() >= Valuation(ball.radius_exp());
}

bool ball_in_ball(const Disk& outer, const Disk& inner) {
  return inner.radius_exp() >= outer.radius_exp() &&
         (inner.center() - outer.center()).valuation() >= Valuation(outer.radius_exp());
}

Disk as_ball(const Disk& complement) { return Disk::closed_ball(complement.center(), complement.radius_exp()); }

}  // namespace

bool membership(const ProjectivePoint& x, const Disk& d) {
  if (x.prime() != d.prime()) throw Error("mixed primes in membership");
  switch (d.form()) {
    case DiskForm::Point:
      return x == d.point_value();
    case DiskForm::Ball:
      return ball_contains_point(d, x);
    case DiskForm::Complement:
      return !ball_contains_point(d, x);
  }
  return false;
}

bool contains(const Disk& outer, const Disk& inner) {
  if (outer.prime() != inner.prime()) throw Error("mixed primes in contains");
  if (inner.is_point()) return membership(inner.point_value(), outer);
  if (outer.is_point()) return false;
  if (outer.form() == DiskForm::Ball) return inner.form() == DiskForm::Ball && ball_in_ball(outer, inner);
  // outer = P1 \ B
  if (inner.form() == DiskForm::Ball) return disjoint(inner, as_ball(outer));
  return ball_in_ball(as_ball(inner), as_ball(outer));
}

bool disjoint(const Disk& a, const Disk& b) {
  if (a.is_point()) return !membership(a.point_value(), b);
  if (b.is_point()) return !membership(b.point_value(), a);
  if (a.form() == DiskForm::Complement && b.form() == DiskForm::Complement) return false;
  if (a.form() == DiskForm::Complement) return ball_in_ball(as_ball(a), b);
  if (b.form() == DiskForm::Complement) return ball_in_ball(as_ball(b), a);
  return (a.center() - b.center()).valuation() < Valuation(std::min(a.radius_exp(), b.radius_exp()));
}

AbsValue diameter(const Disk& d) {
  if (d.is_point()) return AbsValue::zero();
  if (d.form() == DiskForm::Complement) throw Error("diameter of a complement-form disk is not defined here");
  if (d.radius_exp() < 0 || d.center().valuation() < Valuation(0))
    throw Error("diameter is only defined for disks inside the unit ball");
  // Inside Z_p the spherical metric is the p-adic metric and the sup over
  // the ball is attained: diam = p^-k.
  return AbsValue::from_exponent(-d.radius_exp());
}

Disk tree_parent(const Disk& d) {
  if (!d.is_ball()) throw Error("tree_parent expects a ball");
  return Disk::closed_ball(d.center(), d.radius_exp() - 1);
}

std::vector<Disk> residue_children(const Disk& d) {
  if (!d.is_ball()) throw Error("residue_children expects a ball");
  std::vector<Disk> out;
  unsigned long p = d.prime();
  long k = d.radius_exp();
  mpq_class step = k >= 0 ? mpq_class(power(p, static_cast<unsigned long>(k)))
                          : mpq_class(mpz_class(1), power(p, static_cast<unsigned long>(-k)));
  for (unsigned long a = 0; a < p; ++a)
    out.push_back(Disk::closed_ball(d.center() + PadicNumber(mpq_class(step * a), p), k + 1));
  return out;
}

bool excluded_by(const Disk& d, std::span<const ProjectivePoint> points) {
  return std::any_of(points.begin(), points.end(), [&](const ProjectivePoint& x) { return membership(x, d); });
}

bool meets_integers(const Disk& ball) {
  if (ball.is_point()) return !ball.point_value().is_infinity() && ball.point_value().value().valuation() >= Valuation(0);
  Disk zp = Disk::integers(ball.prime());
  return !disjoint(ball, zp);
}

std::vector<Disk> ancestors(const Disk& ball, long stop) {
  std::vector<Disk> out;
  for (long k = ball.radius_exp() - 1; k >= stop; --k) out.push_back(Disk::closed_ball(ball.center(), k));
  return out;
}

}  // namespace padic
