#include "padic/local_analysis.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "padic/errors.hpp"

namespace padic {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

mpz_class floor_q(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Taylor data of f around c.  For polynomials the expansion is finite; for
// rational maps the coefficients beyond the computed prefix obey
//   v(a_j) >= m0 - nu * j,
// where p^-nu is the distance from c to the nearest pole (over C_p) as read
// off the Newton polygon of the denominator.
class Expansion {
 public:
  Expansion(const RationalMap& f, const mpq_class& c) : f_(f), c_(c) {
    if (sgn(f.denominator()(c)) == 0) throw Error("analysis at a pole: " + c.get_str());
    if (f.is_polynomial()) {
      finite_ = true;
      a_ = f.as_polynomial().taylor_shift(c).coeffs();
      return;
    }
    num_ = f.numerator().taylor_shift(c);
    den_ = f.denominator().taylor_shift(c);
    const unsigned long p = f.prime();
    long vb0 = rational_valuation(den_.coeff(0), p).value();
    bool have = false;
    for (std::size_t i = 1; i < den_.coeffs().size(); ++i) {
      if (sgn(den_.coeffs()[i]) == 0) continue;
      mpq_class cand(vb0 - rational_valuation(den_.coeffs()[i], p).value(), static_cast<long>(i));
      cand.canonicalize();
      if (!have || cand > nu_) nu_ = cand;
      have = true;
    }
    have = false;
    for (std::size_t i = 0; i < num_.coeffs().size(); ++i) {
      if (sgn(num_.coeffs()[i]) == 0) continue;
      mpq_class cand = mpq_class(rational_valuation(num_.coeffs()[i], p).value()) + nu_ * static_cast<long>(i);
      if (!have || cand < m0_) m0_ = cand;
      have = true;
    }
    m0_ -= vb0;
    ensure(16);
  }

  bool finite() const { return finite_; }
  std::size_t size() const { return a_.size(); }
  const mpq_class& nu() const { return nu_; }
  const mpq_class& m0() const { return m0_; }
  const mpq_class& coeff(std::size_t j) {
    ensure(j + 1);
    static const mpq_class zero(0);
    return j < a_.size() ? a_[j] : zero;
  }
  Valuation val(std::size_t j) { return rational_valuation(coeff(j), f_.prime()); }

  void ensure(std::size_t n) {
    if (finite_ || a_.size() >= n) return;
    a_ = series_divide(num_, den_, std::max(n, 2 * a_.size()));
  }

 private:
  const RationalMap& f_;
  mpq_class c_;
  bool finite_ = false;
  std::vector<mpq_class> a_;
  Polynomial num_, den_;
  mpq_class nu_ = 0, m0_ = 0;
};

constexpr std::size_t kMaxSeriesTerms = 4096;
// Returned when the m-th term has no competitors (monomial tails): every ball
// qualifies.
constexpr long kEverywhere = std::numeric_limits<long>::min() / 4;

// Least k such that on D(c, p^-k) the term a_m t^m strictly dominates every
// a_j t^j with j > m (and the disk avoids all poles).
long dominance_radius(Expansion& e, std::size_t m) {
  long vm = e.val(m).value();
  long k = std::numeric_limits<long>::min();
  if (!e.finite()) k = floor_q(e.nu()).get_si() + 1;
  std::size_t K = e.finite() ? e.size() : std::max<std::size_t>(e.size(), 2 * m + 16);
  std::size_t checked = m + 1;
  for (;;) {
    for (std::size_t j = checked; j < K; ++j) {
      Valuation vj = e.val(j);
      if (vj.is_infinite()) continue;
      k = std::max(k, floor_div(vm - vj.value(), static_cast<long>(j - m)) + 1);
    }
    checked = K;
    if (e.finite()) break;
    // Tail j >= K: m0 - nu j + j k > vm + m k, increasing in j since k > nu.
    mpq_class lhs = e.m0() + (mpq_class(k) - e.nu()) * static_cast<long>(K);
    if (lhs > mpq_class(vm + static_cast<long>(m) * k)) break;
    if (K >= kMaxSeriesTerms) throw Undecided("series tail bound did not settle");
    K *= 2;
    e.ensure(K);
  }
  return k == std::numeric_limits<long>::min() ? kEverywhere : k;
}

std::size_t first_nonzero(Expansion& e) {
  for (std::size_t j = 1; j < kMaxSeriesTerms; ++j)
    if (sgn(e.coeff(j)) != 0) return j;
  throw Error("locally constant map");
}

}  // namespace

ScalingDisk maximal_scaling_disk(const RationalMap& f, const PadicNumber& x0) {
  Expansion e(f, x0.value());
  if (sgn(e.coeff(1)) == 0) throw Error("maximal_scaling_disk: " + x0.to_string() + " is a critical point");
  long k = dominance_radius(e, 1);
  if (k == kEverywhere) throw Error("maximal_scaling_disk: the map is affine, scaling on all of Q_p");
  return {Disk::closed_ball(x0, k), PadicNumber(e.coeff(1), f.prime()).abs()};
}

bool is_scaling_on(const RationalMap& f, const Disk& ball) {
  if (!ball.is_ball()) return false;
  Expansion e(f, ball.center().value());
  if (sgn(e.coeff(1)) == 0) return false;
  if (!e.finite() && mpq_class(ball.radius_exp()) <= e.nu()) return false;
  return dominance_radius(e, 1) <= ball.radius_exp();
}

long scaling_ratio_valuation(const RationalMap& f, const Disk& ball) {
  Expansion e(f, ball.center().value());
  return e.val(1).value();
}

Disk image_hull(const RationalMap& f, const Disk& ball) {
  if (!ball.is_ball()) throw Error("image_hull expects a ball");
  Expansion e(f, ball.center().value());
  const long k = ball.radius_exp();
  if (!e.finite() && mpq_class(k) <= e.nu()) throw Error("image_hull: the ball contains a pole");
  std::optional<long> best;
  std::size_t K = e.finite() ? e.size() : 32;
  std::size_t checked = 1;
  for (;;) {
    for (std::size_t j = checked; j < K; ++j) {
      Valuation vj = e.val(j);
      if (vj.is_infinite()) continue;
      long r = vj.value() + static_cast<long>(j) * k;
      if (!best || r < *best) best = r;
    }
    checked = K;
    if (e.finite()) break;
    mpq_class tail = e.m0() + (mpq_class(k) - e.nu()) * static_cast<long>(K);
    if (best && tail >= mpq_class(*best)) break;
    if (K >= kMaxSeriesTerms) throw Undecided("series tail bound did not settle");
    K *= 2;
    e.ensure(K);
  }
  PadicNumber fc(e.coeff(0), f.prime());
  if (!best) return Disk::point(fc);  // constant map
  return Disk::closed_ball(fc, *best);
}

long critical_radius_exp(const RationalMap& f, const PadicNumber& c) {
  Expansion e(f, c.value());
  return dominance_radius(e, first_nonzero(e));
}

void DiskUnion::normalize() {
  // Drop balls covered by a critical image or another ball.
  auto covered = [&](std::size_t i) {
    for (const auto& ci : critical_images)
      if (contains(ci.image, balls[i])) return true;
    for (std::size_t j = 0; j < balls.size(); ++j)
      if (j != i && contains(balls[j], balls[i]) && !(balls[j] == balls[i] && j > i)) return true;
    return false;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      if (covered(i)) {
        balls.erase(balls.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
    if (changed) continue;
    // Merge full sibling sets into their parent.
    std::map<std::string, std::vector<std::size_t>> by_parent;
    for (std::size_t i = 0; i < balls.size(); ++i) by_parent[tree_parent(balls[i]).to_string()].push_back(i);
    for (const auto& [key, idx] : by_parent) {
      if (idx.size() != balls.front().prime()) continue;
      Disk parent = tree_parent(balls[idx.front()]);
      std::vector<Disk> rest;
      for (std::size_t i = 0; i < balls.size(); ++i)
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(balls[i]);
      rest.push_back(parent);
      balls = std::move(rest);
      changed = true;
      break;
    }
  }
  std::erase_if(points, [&](const ProjectivePoint& x) {
    for (const auto& b : balls)
      if (membership(x, b)) return true;
    for (const auto& ci : critical_images)
      if (membership(x, ci.image)) return true;
    return false;
  });
  std::sort(balls.begin(), balls.end(), [](const Disk& a, const Disk& b) {
    if (a.radius_exp() != b.radius_exp()) return a.radius_exp() < b.radius_exp();
    return a.center().value() < b.center().value();
  });
}

namespace {

void image_rec(const RationalMap& f, const Disk& ball, int depth, const DiskImageOptions& opts,
               const std::vector<PadicNumber>& crits, DiskUnion& out) {
  std::vector<PadicNumber> inside;
  for (const auto& c : crits)
    if (membership(c, ball)) inside.push_back(c);
  if (inside.empty()) {
    if (is_scaling_on(f, ball)) {
      long v1 = scaling_ratio_valuation(f, ball);
      out.balls.push_back(Disk::closed_ball(f(ball.center()), ball.radius_exp() + v1));
      return;
    }
  } else if (inside.size() == 1 && critical_radius_exp(f, inside.front()) <= ball.radius_exp()) {
    const PadicNumber& c = inside.front();
    int m = local_degree(f, c);
    Disk recentred = Disk::closed_ball(c, ball.radius_exp());
    out.critical_images.push_back({c, m, image_hull(f, recentred)});
    return;
  }
  if (depth >= opts.depth_bound)
    throw Undecided("disk_image: decomposition of " + ball.to_string() + " exceeded depth bound " +
                    std::to_string(opts.depth_bound));
  for (const auto& child : residue_children(ball)) image_rec(f, child, depth + 1, opts, crits, out);
}

}  // namespace

DiskUnion disk_image(const RationalMap& f, const Disk& d, const DiskImageOptions& opts) {
  DiskUnion out;
  if (d.is_point()) {
    out.points.push_back(f(d.point_value()));
    return out;
  }
  if (!d.is_ball()) throw Error("disk_image: complement-form disks must be moved to the affine chart first");
  std::vector<PadicNumber> crits = opts.critical_points;
  if (crits.empty())
    for (const auto& c : rational_critical_points(f).points)
      if (!c.location.is_infinity()) crits.push_back(c.location.value());
  image_rec(f, d, 0, opts, crits, out);
  out.normalize();
  return out;
}

}  // namespace padic
