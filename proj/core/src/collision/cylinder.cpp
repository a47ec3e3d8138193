#include "vesselsim/collision/cylinder.hpp"

#include <algorithm>
#include <cmath>

#include "vesselsim/core/error.hpp"

namespace vesselsim::collision {

std::string_view to_string(Surface s) noexcept {
  switch (s) {
    case Surface::Side: return "side";
    case Surface::Top: return "top";
    case Surface::Bottom: return "bottom";
  }
  return "unknown";
}

CylinderHits cylinder_hit_test(const Vec3& center, double radius, const domains::Cylinder& cyl,
                               const Frame& frame) noexcept {
  const FrameComponents c = frame.components(center - frame.origin);
  const double half_height = 0.5 * cyl.height;
  CylinderHits hits;
  hits.top = c.d + radius >= half_height;
  hits.bottom = -c.d + radius >= half_height;
  hits.side = std::hypot(c.n, c.o) + radius >= cyl.radius;
  return hits;
}

namespace {

// Smallest t in [0, 1] with |s + t*delta| = rho, given |s| < rho (2D, transverse plane).
double first_radial_contact(double sn, double so, double dn, double dd_o, double rho) noexcept {
  const double c = sn * sn + so * so - rho * rho;
  if (c >= 0.0) return 0.0;
  const double a = dn * dn + dd_o * dd_o;
  if (a == 0.0) return 1.0;
  const double b = 2.0 * (sn * dn + so * dd_o);
  const double disc = std::max(0.0, b * b - 4.0 * a * c);
  const double sq = std::sqrt(disc);
  // c < 0 means one positive and one negative root; pick the positive one stably.
  double t;
  if (b >= 0.0) {
    const double q = -0.5 * (b + sq);
    t = c / q;
  } else {
    const double q = -0.5 * (b - sq);
    t = q / a;
  }
  return std::clamp(t, 0.0, 1.0);
}

}  // namespace

WallHit backtrack_impact(const Vec3& start, const Vec3& end, double radius, Surface surface,
                         const domains::Cylinder& cyl, const Frame& frame) noexcept {
  const FrameComponents s = frame.components(start - frame.origin);
  const FrameComponents e = frame.components(end - frame.origin);
  WallHit hit;
  hit.surface = surface;
  const double half_height = 0.5 * cyl.height;

  double t = 0.0;
  switch (surface) {
    case Surface::Side:
      t = first_radial_contact(s.n, s.o, e.n - s.n, e.o - s.o, cyl.radius - radius);
      break;
    case Surface::Top: {
      const double target = half_height - radius;
      const double delta = e.d - s.d;
      t = (s.d >= target || delta <= 0.0) ? 0.0 : std::clamp((target - s.d) / delta, 0.0, 1.0);
      break;
    }
    case Surface::Bottom: {
      const double target = -(half_height - radius);
      const double delta = e.d - s.d;
      t = (s.d <= target || delta >= 0.0) ? 0.0 : std::clamp((target - s.d) / delta, 0.0, 1.0);
      break;
    }
  }
  hit.impact_fraction = t;
  hit.contact_center = start + (end - start) * t;

  const FrameComponents c = frame.components(hit.contact_center - frame.origin);
  if (surface == Surface::Side) {
    const double rho = std::hypot(c.n, c.o);
    const double un = rho > 0.0 ? c.n / rho : 1.0;
    const double uo = rho > 0.0 ? c.o / rho : 0.0;
    hit.normal = frame.from_components({un, uo, 0.0});
    hit.impact_point = frame.origin + frame.from_components({cyl.radius * un, cyl.radius * uo, c.d});
  } else {
    const double sign = surface == Surface::Top ? 1.0 : -1.0;
    hit.normal = frame.d * sign;
    hit.impact_point = frame.origin + frame.from_components({c.n, c.o, sign * half_height});
  }
  return hit;
}

Frame impact_frame(const WallHit& hit, const Frame& cylinder_frame) noexcept {
  Frame f;
  f.origin = hit.impact_point;
  if (hit.surface == Surface::Side) {
    f.d = cylinder_frame.d;
    f.n = hit.normal;
    f.o = cross(f.d, f.n);
  } else {
    f.d = hit.normal;
    f.n = cylinder_frame.n;
    f.o = cross(f.d, f.n);
  }
  return f;
}

namespace {
void check_restitution(double e) {
  if (!(e >= 0.0 && e <= 1.0)) fail(ErrorKind::InvalidParameter, "restitution coefficient must lie in [0, 1]");
}
}  // namespace

FrameComponents bounce_flat(FrameComponents v, double restitution) {
  check_restitution(restitution);
  v.d = -restitution * v.d;
  return v;
}

Vec3 bounce_flat(const Vec3& v, const Frame& frame, double restitution) {
  return frame.from_components(bounce_flat(frame.components(v), restitution));
}

FrameComponents bounce_side(FrameComponents v, double restitution) {
  check_restitution(restitution);
  v.n = -restitution * v.n;
  return v;
}

Vec3 bounce_side(const Vec3& v, const Frame& frame, double restitution) {
  return frame.from_components(bounce_side(frame.components(v), restitution));
}

Vec3 clamp_inside_side(const Vec3& center, double radius, const domains::Cylinder& cyl, const Frame& frame) noexcept {
  FrameComponents c = frame.components(center - frame.origin);
  const double rho = std::hypot(c.n, c.o);
  if (rho + radius < cyl.radius) return center;
  // Rounding in the world transform scales with |origin|, not with the radius,
  // so widen the margin until the world-space point passes the hit test.
  Vec3 out = center;
  for (double margin = 1e-12; margin < 1.0; margin *= 4.0) {
    const double scale = rho > 0.0 ? (cyl.radius - radius) * (1.0 - margin) / rho : 0.0;
    out = frame.origin + frame.from_components({c.n * scale, c.o * scale, c.d});
    if (!cylinder_hit_test(out, radius, cyl, frame).side) break;
  }
  return out;
}

WallResolution resolve_side_wall(MovingSphere sphere, const domains::Cylinder& cyl, const Frame& frame,
                                 double restitution, double dt,
                                 const std::function<ContactAction(const WallHit&)>& on_contact,
                                 std::uint32_t max_contacts) {
  check_restitution(restitution);
  WallResolution res;
  Vec3 start = sphere.start;
  Vec3 end = sphere.end;
  Vec3 v = sphere.velocity;
  double span = dt;

  while (res.contacts < max_contacts) {
    if (!cylinder_hit_test(end, sphere.radius, cyl, frame).side) break;
    const WallHit hit = backtrack_impact(start, end, sphere.radius, Surface::Side, cyl, frame);
    ++res.contacts;
    if (on_contact && on_contact(hit) == ContactAction::Absorb) {
      res.absorbed = true;
      res.absorbing_hit = hit;
      res.end = hit.contact_center;
      res.velocity = v;
      return res;
    }
    // Only an outward-moving sphere bounces; one already heading inward is just pushed back.
    if (dot(v, hit.normal) <= 0.0) break;
    v = bounce_side(v, impact_frame(hit, frame), restitution);
    const double rest = (1.0 - hit.impact_fraction) * span;
    start = hit.contact_center;
    end = start + v * rest;
    span = rest;
  }
  if (cylinder_hit_test(end, sphere.radius, cyl, frame).side) {
    end = clamp_inside_side(end, sphere.radius, cyl, frame);
    res.clamped = true;
  }
  res.end = end;
  res.velocity = v;
  return res;
}

}  // namespace vesselsim::collision
