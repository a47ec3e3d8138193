#include "vesselsim/core/vec3.hpp"

#include <algorithm>

namespace vesselsim {

Frame Frame::from_axis(const Vec3& origin, const Vec3& axis) {
  Frame f;
  f.origin = origin;
  f.d = normalized(axis);
  // Pick the world axis least aligned with d to seed n.
  const Vec3 seed = std::abs(f.d.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  f.n = normalized(seed - f.d * dot(seed, f.d));
  f.o = cross(f.d, f.n);
  return f;
}

Frame Frame::rotated_about_d(double angle) const noexcept {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Frame f = *this;
  f.n = n * c + o * s;
  f.o = o * c - n * s;
  return f;
}

Frame Frame::compose(const Frame& child_local) const noexcept {
  Frame f;
  f.origin = to_world(child_local.origin);
  f.n = rotate_to_world(child_local.n);
  f.o = rotate_to_world(child_local.o);
  f.d = rotate_to_world(child_local.d);
  return f;
}

double Frame::orthonormality_error() const noexcept {
  double err = 0.0;
  err = std::max(err, std::abs(norm(n) - 1.0));
  err = std::max(err, std::abs(norm(o) - 1.0));
  err = std::max(err, std::abs(norm(d) - 1.0));
  err = std::max(err, std::abs(dot(n, o)));
  err = std::max(err, std::abs(dot(n, d)));
  err = std::max(err, std::abs(dot(o, d)));
  // Right-handedness: n x o must equal d.
  err = std::max(err, norm(cross(n, o) - d));
  return err;
}

double wrap_angle(double a) noexcept {
  constexpr double pi = std::numbers::pi;
  a = std::remainder(a, 2.0 * pi);
  if (a <= -pi) a += 2.0 * pi;
  return a;
}

CylindricalCoord to_cylindrical(const Vec3& point, const Frame& frame) noexcept {
  const FrameComponents c = frame.components(point - frame.origin);
  CylindricalCoord out;
  out.r = std::hypot(c.n, c.o);
  out.z = c.d;
  if (out.r == 0.0) {
    out.phi = 0.0;
  } else {
    out.phi = std::atan2(c.o, c.n);
    if (out.phi <= -std::numbers::pi) out.phi = std::numbers::pi;
  }
  return out;
}

Vec3 from_cylindrical(const CylindricalCoord& c, const Frame& frame) noexcept {
  return frame.origin + frame.from_components({c.r * std::cos(c.phi), c.r * std::sin(c.phi), c.z});
}

}  // namespace vesselsim
