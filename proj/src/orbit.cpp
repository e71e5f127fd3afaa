#include "padic/orbit.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "padic/errors.hpp"
#include "padic/local_analysis.hpp"

namespace padic {

std::string to_string(OrbitFate f) {
  switch (f) {
    case OrbitFate::Preperiodic: return "preperiodic";
    case OrbitFate::Escapes: return "escapes";
    case OrbitFate::Attracted: return "attracted";
    case OrbitFate::Undetermined: return "undetermined";
  }
  return "?";
}

std::string to_string(CycleType t) {
  switch (t) {
    case CycleType::Superattracting: return "superattracting";
    case CycleType::Attracting: return "attracting";
    case CycleType::Indifferent: return "indifferent";
    case CycleType::Repelling: return "repelling";
  }
  return "?";
}

std::string to_string(FatouCertificate::Kind k) {
  switch (k) {
    case FatouCertificate::Kind::Escape: return "escape";
    case FatouCertificate::Kind::Attracting: return "attracting";
    case FatouCertificate::Kind::JuliaCandidate: return "julia-candidate";
    case FatouCertificate::Kind::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

constexpr long kInvariantSearchDepth = 64;

CycleType classify(const mpq_class& multiplier, unsigned long p) {
  if (sgn(multiplier) == 0) return CycleType::Superattracting;
  long v = rational_valuation(multiplier, p).value();
  if (v > 0) return CycleType::Attracting;
  if (v == 0) return CycleType::Indifferent;
  return CycleType::Repelling;
}

bool escapes_now(const ProjectivePoint& x, const BasinCertificates& b) {
  if (!b.infinity_escape) return false;
  return x.is_infinity() || x.value().valuation() < Valuation(0);
}

std::optional<std::size_t> in_invariant_disk(const ProjectivePoint& x, const BasinCertificates& b) {
  for (std::size_t i = 0; i < b.invariant_disks.size(); ++i)
    if (membership(x, b.invariant_disks[i].disk)) return i;
  return std::nullopt;
}

std::string key(const ProjectivePoint& x) { return x.to_string(); }

}  // namespace

BasinCertificates certify_basins(const RationalMap& f) {
  BasinCertificates b;
  const unsigned long p = f.prime();
  if (f.is_polynomial() && f.degree() >= 2) {
    Polynomial g = f.as_polynomial();
    long d = g.degree();
    long vd = rational_valuation(g.leading(), p).value();
    bool dominant = vd < d - 1;
    for (long k = 0; k < d; ++k) {
      Valuation vk = rational_valuation(g.coeff(static_cast<std::size_t>(k)), p);
      if (!vk.is_infinite() && vk.value() < vd) dominant = false;
    }
    b.infinity_escape = dominant;
  }
  for (const auto& a : rational_fixed_points(f)) {
    if (a.is_infinity() || a.value().valuation() < Valuation(0)) continue;
    mpq_class m = cycle_multiplier(f, {a});
    if (classify(m, p) == CycleType::Repelling) continue;
    for (long k = 0; k <= kInvariantSearchDepth; ++k) {
      Disk ball = Disk::closed_ball(a.value(), k);
      try {
        if (contains(ball, image_hull(f, ball))) {
          b.invariant_disks.push_back({ball, a});
          break;
        }
      } catch (const Error&) {
        // pole inside the ball: shrink further
      }
    }
  }
  return b;
}

BallCertificate certify_ball(const RationalMap& f, const BasinCertificates& basins, const Disk& ball) {
  BallCertificate c;
  Disk hull = image_hull(f, ball);
  if (basins.infinity_escape && !meets_integers(hull)) {
    c.fate = BallFate::Escapes;
    return c;
  }
  for (std::size_t i = 0; i < basins.invariant_disks.size(); ++i) {
    if (contains(basins.invariant_disks[i].disk, hull) || contains(basins.invariant_disks[i].disk, ball)) {
      c.fate = BallFate::Invariant;
      c.invariant_index = i;
      return c;
    }
  }
  return c;
}

bool OrbitReport::geometrically_finite() const {
  return std::all_of(orbits.begin(), orbits.end(), [](const CriticalOrbit& o) {
    return o.fate != OrbitFate::Undetermined;
  });
}

bool OrbitReport::undetermined() const {
  return std::any_of(orbits.begin(), orbits.end(),
                     [](const CriticalOrbit& o) { return o.fate == OrbitFate::Undetermined; });
}

std::vector<const CriticalOrbit*> OrbitReport::julia_critical() const {
  std::vector<const CriticalOrbit*> out;
  for (const auto& o : orbits)
    if (o.julia()) out.push_back(&o);
  return out;
}

OrbitReport critical_orbit_analysis(const RationalMap& f, const std::vector<CriticalPoint>& crits,
                                    const BasinCertificates& basins, const OrbitOptions& opts) {
  OrbitReport rep;
  for (const auto& c : crits) {
    CriticalOrbit o{c, {}};
    o.orbit.push_back(c.location);
    std::map<std::string, std::size_t> seen{{key(c.location), 0}};
    for (std::size_t step = 0; step < opts.horizon; ++step) {
      ProjectivePoint next = f(o.orbit.back());
      auto hit = seen.find(key(next));
      if (hit != seen.end()) {
        o.fate = OrbitFate::Preperiodic;
        o.cycle_start = hit->second;
        o.period = o.orbit.size() - hit->second;
        std::vector<ProjectivePoint> cycle(o.orbit.begin() + static_cast<long>(o.cycle_start), o.orbit.end());
        o.multiplier = cycle_multiplier(f, cycle);
        o.cycle_type = classify(o.multiplier, f.prime());
        break;
      }
      if (escapes_now(next, basins)) {
        o.fate = OrbitFate::Escapes;
        o.certificate_step = step + 1;
        o.orbit.push_back(next);
        break;
      }
      if (in_invariant_disk(next, basins)) {
        o.fate = OrbitFate::Attracted;
        o.certificate_step = step + 1;
        o.orbit.push_back(next);
        break;
      }
      if (!next.is_infinity() && next.value().bit_size() > opts.size_cap_bits) break;
      seen.emplace(key(next), o.orbit.size());
      o.orbit.push_back(next);
    }
    rep.orbits.push_back(std::move(o));
  }

  // ~ classes over the critical points with finite orbits.
  std::vector<std::size_t> finite;
  for (std::size_t i = 0; i < rep.orbits.size(); ++i)
    if (rep.orbits[i].fate == OrbitFate::Preperiodic) finite.push_back(i);
  auto in_orbit = [&](std::size_t a, std::size_t b) {  // critical point a in orbit of b
    const auto& orb = rep.orbits[b].orbit;
    return std::find(orb.begin(), orb.end(), rep.orbits[a].critical.location) != orb.end();
  };
  auto orbit_set = [&](std::size_t i) {
    std::set<std::string> s;
    for (const auto& x : rep.orbits[i].orbit) s.insert(key(x));
    return s;
  };
  std::vector<bool> placed(rep.orbits.size(), false);
  for (std::size_t i : finite) {
    if (placed[i]) continue;
    std::vector<std::size_t> cls{i};
    placed[i] = true;
    for (std::size_t j : finite)
      if (!placed[j] && in_orbit(i, j) && in_orbit(j, i)) {
        cls.push_back(j);
        placed[j] = true;
      }
    rep.classes.push_back(cls);
  }
  for (std::size_t a = 0; a < rep.classes.size(); ++a) {
    auto sa = orbit_set(rep.classes[a].front());
    bool minimal = true;
    for (std::size_t b = 0; b < rep.classes.size() && minimal; ++b) {
      if (a == b) continue;
      auto sb = orbit_set(rep.classes[b].front());
      if (sb.size() < sa.size() && std::includes(sa.begin(), sa.end(), sb.begin(), sb.end())) minimal = false;
    }
    if (minimal) rep.minimal_classes.push_back(a);
  }
  return rep;
}

FatouCertificate fatou_certificate(const RationalMap& f, const BasinCertificates& basins, const ProjectivePoint& x,
                                   const OrbitOptions& opts) {
  FatouCertificate cert;
  cert.horizon = opts.horizon;
  std::vector<ProjectivePoint> orbit{x};
  std::map<std::string, std::size_t> seen{{key(x), 0}};
  for (std::size_t step = 0;; ++step) {
    const ProjectivePoint& cur = orbit.back();
    if (escapes_now(cur, basins)) {
      cert.kind = FatouCertificate::Kind::Escape;
      cert.step = step;
      cert.basin_point = ProjectivePoint::infinity(f.prime());
      return cert;
    }
    if (auto i = in_invariant_disk(cur, basins)) {
      cert.kind = FatouCertificate::Kind::Attracting;
      cert.step = step;
      cert.basin_point = basins.invariant_disks[*i].fixed_point;
      return cert;
    }
    if (step >= opts.horizon) {
      cert.kind = FatouCertificate::Kind::JuliaCandidate;
      cert.step = step;
      return cert;
    }
    if (!cur.is_infinity() && cur.value().bit_size() > opts.size_cap_bits) {
      cert.kind = FatouCertificate::Kind::Undetermined;
      cert.step = step;
      return cert;
    }
    ProjectivePoint next = f(cur);
    auto hit = seen.find(key(next));
    if (hit != seen.end()) {
      std::vector<ProjectivePoint> cycle(orbit.begin() + static_cast<long>(hit->second), orbit.end());
      CycleType t = classify(cycle_multiplier(f, cycle), f.prime());
      cert.step = step + 1;
      if (t == CycleType::Repelling) {
        cert.kind = FatouCertificate::Kind::JuliaCandidate;
        cert.eventually_periodic = true;
      } else {
        // Non-repelling cycles of Q_p-points lie in the Fatou set.
        cert.kind = FatouCertificate::Kind::Attracting;
        cert.basin_point = cycle.front();
      }
      return cert;
    }
    seen.emplace(key(next), orbit.size());
    orbit.push_back(next);
  }
}

}  // namespace padic
