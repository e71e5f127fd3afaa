#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "padic/disk.hpp"
#include "padic/rational_map.hpp"

namespace padic {

// A ball around a non-repelling rational fixed point whose C_p-image hull
// lies inside itself, so the ball is forward invariant and Fatou.
struct InvariantDisk {
  Disk disk;
  ProjectivePoint fixed_point;
};

struct BasinCertificates {
  // Q_p \ Z_p lies in the basin of infinity: for |x| > 1 the leading term
  // dominates and |f(x)| > |x|.
  bool infinity_escape = false;
  std::vector<InvariantDisk> invariant_disks;
};

BasinCertificates certify_basins(const RationalMap& f);

enum class BallFate { Unknown, Escapes, Invariant };

// One-step certificate for a ball: its image hull leaves Z_p (escape) or
// falls into a certified invariant disk.
struct BallCertificate {
  BallFate fate = BallFate::Unknown;
  std::optional<std::size_t> invariant_index;
};
BallCertificate certify_ball(const RationalMap& f, const BasinCertificates& basins, const Disk& ball);

enum class OrbitFate { Preperiodic, Escapes, Attracted, Undetermined };
enum class CycleType { Superattracting, Attracting, Indifferent, Repelling };

std::string to_string(OrbitFate f);
std::string to_string(CycleType t);

struct CriticalOrbit {
  CriticalPoint critical;
  std::vector<ProjectivePoint> orbit;  // c, f(c), ... up to the first repeat
  OrbitFate fate = OrbitFate::Undetermined;
  std::size_t cycle_start = 0;  // index of the first periodic point
  std::size_t period = 0;
  mpq_class multiplier = 0;
  CycleType cycle_type = CycleType::Indifferent;
  std::size_t certificate_step = 0;  // step where escape / attraction was certified

  // Lands on a repelling cycle: the critical point is in the Julia set.
  bool julia() const { return fate == OrbitFate::Preperiodic && cycle_type == CycleType::Repelling; }
  // Some iterate is a fixed point.
  bool iteratedly_prefixed() const { return fate == OrbitFate::Preperiodic && period == 1; }
};

struct OrbitReport {
  std::vector<CriticalOrbit> orbits;
  // Classes of ~ among critical points with finite orbits (indices into
  // `orbits`), and the indices of the minimal classes under orbit inclusion.
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> minimal_classes;

  bool geometrically_finite() const;  // every Julia critical point has a finite orbit
  bool undetermined() const;
  std::vector<const CriticalOrbit*> julia_critical() const;
};

struct OrbitOptions {
  std::size_t horizon = 1000000;
  std::size_t size_cap_bits = 1000000;
};

OrbitReport critical_orbit_analysis(const RationalMap& f, const std::vector<CriticalPoint>& crits,
                                    const BasinCertificates& basins, const OrbitOptions& opts = {});

// Point certificates.
struct FatouCertificate {
  enum class Kind { Escape, Attracting, JuliaCandidate, Undetermined };
  Kind kind = Kind::Undetermined;
  std::size_t step = 0;  // first step inside a certified basin, or steps run
  std::optional<ProjectivePoint> basin_point;  // fixed point of the basin (inf for escape)
  bool eventually_periodic = false;  // JuliaCandidate with an exact cycle found
  std::size_t horizon = 0;
};

std::string to_string(FatouCertificate::Kind k);

FatouCertificate fatou_certificate(const RationalMap& f, const BasinCertificates& basins,
                                   const ProjectivePoint& x, const OrbitOptions& opts = {});

}  // namespace padic
