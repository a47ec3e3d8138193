#include "vesselsim/collision/two_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vesselsim/core/error.hpp"

namespace vesselsim::collision {

TwoBodyResult resolve_two_body(const Vec3& v1, const Vec3& v2, double m1, double m2, double restitution,
                               const Vec3& normal) {
  if (!(m1 > 0.0 && m2 > 0.0)) fail(ErrorKind::InvalidParameter, "collision masses must be positive");
  if (!(restitution >= 0.0 && restitution <= 1.0)) {
    fail(ErrorKind::InvalidParameter, "restitution coefficient must lie in [0, 1]");
  }
  const double len = norm(normal);
  if (!(len > 0.0) || !std::isfinite(len)) fail(ErrorKind::InvalidParameter, "contact normal is zero");
  const Vec3 n = normal / len;

  const double u1 = dot(v1, n);
  const double u2 = dot(v2, n);
  const double total = m1 + m2;
  const double ucm = (m1 * u1 + m2 * u2) / total;
  const double w1 = u1 - ucm;
  const double w2 = u2 - ucm;
  const double e = restitution;
  const double w1f = ((m1 - e * m2) * w1 + m2 * (1.0 + e) * w2) / total;
  const double w2f = ((m2 - e * m1) * w2 + m1 * (1.0 + e) * w1) / total;

  // Replace only the normal component; the tangential part is left as computed from v - (v.n) n.
  return {v1 + n * ((w1f + ucm) - u1), v2 + n * ((w2f + ucm) - u2)};
}

double cm_kinetic_energy_ratio(const Vec3& v1_pre, const Vec3& v2_pre, const Vec3& v1_post, const Vec3& v2_post,
                               double m1, double m2, const Vec3& normal) {
  const Vec3 n = normalized(normal);
  auto cm_energy = [&](const Vec3& a, const Vec3& b) {
    // 1/2 m1 w1^2 + 1/2 m2 w2^2 in the CM frame equals 1/2 mu (u1 - u2)^2;
    // the reduced-mass form avoids cancellation when the CM speed dominates.
    const double rel = dot(a, n) - dot(b, n);
    return 0.5 * (m1 * m2 / (m1 + m2)) * rel * rel;
  };
  const double before = cm_energy(v1_pre, v2_pre);
  if (before == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return cm_energy(v1_post, v2_post) / before;
}

std::pair<Vec3, Vec3> separation_displacements(const Vec3& c1, double r1, const Vec3& c2, double r2) {
  const Vec3 delta = c2 - c1;
  const double dist = norm(delta);
  const double overlap = r1 + r2 - dist;
  if (overlap < 0.0) return {Vec3{}, Vec3{}};
  const Vec3 n = dist > 0.0 ? delta / dist : Vec3{1.0, 0.0, 0.0};
  const double push = 0.5 * overlap + kSeparationEpsilon;
  return {n * -push, n * push};
}

double pair_contact_fraction(const Vec3& s1, const Vec3& e1, const Vec3& s2, const Vec3& e2, double reach) {
  const Vec3 s = s2 - s1;
  const Vec3 d = (e2 - e1) - s;
  const double c = norm2(s) - reach * reach;
  if (c <= 0.0) return 0.0;
  const double a = norm2(d);
  if (a == 0.0) return 1.0;
  const double b = 2.0 * dot(s, d);
  if (b >= 0.0) return 1.0;  // separating
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return 1.0;
  // Smaller root of a t^2 + b t + c with b < 0, c > 0: both roots positive.
  const double q = -0.5 * (b - std::sqrt(disc));
  return std::clamp(c / q, 0.0, 1.0);
}

}  // namespace vesselsim::collision
