#pragma once

#include <cmath>
#include <numbers>

namespace vesselsim {

/// Plain 3-vector. Positions in meters, velocities in m/s, depending on use.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) noexcept {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) noexcept {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) noexcept {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) noexcept { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) noexcept { return a -= b; }
  friend constexpr Vec3 operator*(Vec3 a, double s) noexcept { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) noexcept { return a *= s; }
  friend constexpr Vec3 operator/(const Vec3& a, double s) noexcept { return {a.x / s, a.y / s, a.z / s}; }
  friend constexpr Vec3 operator-(const Vec3& a) noexcept { return {-a.x, -a.y, -a.z}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) noexcept {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) noexcept { return std::sqrt(dot(a, a)); }
constexpr double norm2(const Vec3& a) noexcept { return dot(a, a); }

inline Vec3 normalized(const Vec3& a) noexcept {
  const double n = norm(a);
  return n > 0.0 ? a * (1.0 / n) : Vec3{};
}

inline bool is_finite(const Vec3& a) noexcept {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Components of a vector along the (n, o, d) axes of a Frame.
/// n = reference transverse axis, o = second transverse axis, d = longitudinal axis.
struct FrameComponents {
  double n = 0.0;
  double o = 0.0;
  double d = 0.0;
  friend constexpr bool operator==(const FrameComponents&, const FrameComponents&) = default;
};

/// Orthonormal right-handed frame: n x o = d.
///
/// Local coordinates (x, y, z) map to x along n, y along o, z along d. The
/// identity frame therefore has n = e_x, o = e_y, d = e_z.
struct Frame {
  Vec3 origin{};
  Vec3 n{1.0, 0.0, 0.0};
  Vec3 o{0.0, 1.0, 0.0};
  Vec3 d{0.0, 0.0, 1.0};

  static Frame identity() noexcept { return {}; }

  /// Frame with the given longitudinal axis; n is chosen perpendicular to it.
  static Frame from_axis(const Vec3& origin, const Vec3& axis);

  FrameComponents components(const Vec3& v) const noexcept { return {dot(v, n), dot(v, o), dot(v, d)}; }

  Vec3 from_components(const FrameComponents& c) const noexcept { return n * c.n + o * c.o + d * c.d; }

  Vec3 to_local(const Vec3& p) const noexcept {
    const FrameComponents c = components(p - origin);
    return {c.n, c.o, c.d};
  }
  Vec3 to_world(const Vec3& local) const noexcept {
    return origin + from_components({local.x, local.y, local.z});
  }
  Vec3 rotate_to_world(const Vec3& local) const noexcept { return from_components({local.x, local.y, local.z}); }

  /// Rotation by `angle` (right-hand rule) about this frame's d axis.
  Frame rotated_about_d(double angle) const noexcept;

  /// Express a child frame given in this frame's local axes in world axes.
  Frame compose(const Frame& child_local) const noexcept;

  /// Largest deviation from orthonormality (|a|-1 and pairwise dots).
  double orthonormality_error() const noexcept;
};

/// Cylindrical coordinates about a frame's d axis; phi measured from n toward o.
struct CylindricalCoord {
  double phi = 0.0;  ///< radians in (-pi, pi]
  double r = 0.0;
  double z = 0.0;
};

CylindricalCoord to_cylindrical(const Vec3& point, const Frame& frame) noexcept;
Vec3 from_cylindrical(const CylindricalCoord& c, const Frame& frame) noexcept;

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a) noexcept;

}  // namespace vesselsim
