#pragma once

#include <optional>
#include <vector>

#include "padic/disk.hpp"
#include "padic/rational_map.hpp"

namespace padic {

// The maximal ball around x0 on which |f(x) - f(y)| = ratio * |x - y|.
//
// `disk` is the closed ball {v(x - x0) >= k}; over C_p the same set of Q_p
// points is the open disk of radius p^-(k-1), whose exponent is reported by
// open_radius_exp().
struct ScalingDisk {
  Disk disk;
  AbsValue ratio;
  long radius_exp() const { return disk.radius_exp(); }
  long open_radius_exp() const { return disk.radius_exp() - 1; }
};

ScalingDisk maximal_scaling_disk(const RationalMap& f, const PadicNumber& x0);
bool is_scaling_on(const RationalMap& f, const Disk& ball);
// Scaling ratio valuation v(f'(c)) on a ball known to be scaling.
long scaling_ratio_valuation(const RationalMap& f, const Disk& ball);

// f(D) over C_p for a ball D on which f has no pole: D(f(c), max_j |a_j| r^j).
// The Q_p-image is contained in it.
Disk image_hull(const RationalMap& f, const Disk& ball);

// Image of a ball around the critical point c that lies inside the radius
// where |f(x) - f(c)| = |a_m| |x - c|^m.
struct CriticalImage {
  ProjectivePoint critical_point;
  int local_degree = 2;
  Disk image;  // D(f(c), |a_m| r^m) over C_p
};

struct DiskUnion {
  std::vector<ProjectivePoint> points;
  std::vector<Disk> balls;  // exact images of scaling pieces
  std::vector<CriticalImage> critical_images;

  // Merge complete sibling sets and drop pieces covered by others.
  void normalize();
  bool is_single_ball() const { return points.empty() && critical_images.empty() && balls.size() == 1; }
};

struct DiskImageOptions {
  int depth_bound = 32;
  // Finite critical points to split around; derived when empty.
  std::vector<PadicNumber> critical_points;
};

DiskUnion disk_image(const RationalMap& f, const Disk& d, const DiskImageOptions& opts = {});

// Largest radius exponent k such that on D(c, p^-k) one has
// |f(x) - f(c)| = |a_m| |x - c|^m (certified on the Taylor coefficients).
// A very negative value means every ball around c qualifies (f - f(c) is a
// monomial in x - c).
long critical_radius_exp(const RationalMap& f, const PadicNumber& c);

}  // namespace padic
