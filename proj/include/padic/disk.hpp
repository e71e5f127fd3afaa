#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "padic/padic_number.hpp"

namespace padic {

enum class DiskForm { Ball, Complement, Point };

// A disk of P^1(Q_p).
//
// Over Q_p every ball whose radius lies in the value group is both open and
// closed: the open ball {|x - c| < p^-k} is the closed ball of radius
// p^-(k+1).  Balls are therefore stored in one canonical closed form
// {x : v(x - c) >= radius_exp} with the center reduced modulo p^radius_exp,
// which makes equality structural and hashing possible.
class Disk {
 public:
  static Disk closed_ball(const PadicNumber& center, long radius_exp);
  static Disk open_ball(const PadicNumber& center, long radius_exp);
  static Disk integers(unsigned long p) { return closed_ball(PadicNumber(0, p), 0); }
  static Disk point(const ProjectivePoint& x);
  // P^1 minus a ball.
  static Disk complement_of(const Disk& ball);
  // "c + p^k * Z", "closed(c, p^-k)", "point(c)"; "P1 \ <ball>" for complements.
  static Disk parse(std::string_view text, unsigned long p);

  DiskForm form() const { return form_; }
  bool is_ball() const { return form_ == DiskForm::Ball; }
  bool is_point() const { return form_ == DiskForm::Point; }
  // All stored balls are closed (see class comment).
  bool closed() const { return true; }
  const PadicNumber& center() const;
  long radius_exp() const;
  const ProjectivePoint& point_value() const;
  unsigned long prime() const { return prime_; }

  bool operator==(const Disk& o) const;
  std::size_t hash() const;
  std::string to_string() const;

 private:
  Disk(DiskForm form, PadicNumber center, long radius_exp, ProjectivePoint pt);
  DiskForm form_;
  unsigned long prime_;
  PadicNumber center_;
  long radius_exp_;
  ProjectivePoint point_;
};

bool membership(const ProjectivePoint& x, const Disk& d);
bool contains(const Disk& outer, const Disk& inner);
bool disjoint(const Disk& a, const Disk& b);
// Spherical diameter; only for balls and points inside the unit ball.
AbsValue diameter(const Disk& d);
Disk tree_parent(const Disk& d);
std::vector<Disk> residue_children(const Disk& d);
// True when d contains one of the listed points (the removed tree nodes).
bool excluded_by(const Disk& d, std::span<const ProjectivePoint> points);
// Does the ball meet Z_p?
bool meets_integers(const Disk& ball);
// Chain of strictly larger balls up to (and including) radius exponent `stop`.
std::vector<Disk> ancestors(const Disk& ball, long stop);

struct DiskHash {
  std::size_t operator()(const Disk& d) const { return d.hash(); }
};

}  // namespace padic
