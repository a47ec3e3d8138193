#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "vesselsim/core/vec3.hpp"
#include "vesselsim/domains/domain.hpp"

namespace vesselsim::collision {

enum class Surface : std::uint8_t { Side, Top, Bottom };
std::string_view to_string(Surface s) noexcept;

/// Which cylinder surfaces a sphere touches or penetrates (tangent counts).
struct CylinderHits {
  bool side = false;
  bool top = false;
  bool bottom = false;
  bool any() const noexcept { return side || top || bottom; }
  bool top_or_bottom() const noexcept { return top || bottom; }
};

/// Interior hit test of a sphere against a cylinder whose axis is `frame.d`
/// and whose center is `frame.origin`:
///   top/bottom when |C.d| + r >= h/2, side when |C - (C.d)d| + r >= r_v.
CylinderHits cylinder_hit_test(const Vec3& center, double radius, const domains::Cylinder& cyl,
                               const Frame& frame) noexcept;

struct WallHit {
  Surface surface = Surface::Side;
  Vec3 impact_point{};    ///< on the surface
  Vec3 contact_center{};  ///< sphere center at the moment of contact
  double impact_fraction = 0.0;  ///< fraction of the step elapsed at contact, in [0, 1]
  Vec3 normal{};          ///< outward unit normal of the surface at the impact point
};

/// Linear backtracking between the start and end centers of a step to the first
/// contact with `surface`. An object already touching at the start gets t* = 0.
WallHit backtrack_impact(const Vec3& start, const Vec3& end, double radius, Surface surface,
                         const domains::Cylinder& cyl, const Frame& frame) noexcept;

/// Frame of the impact: d = cylinder axis, n = outward surface normal at the
/// impact point for the side wall (for flat faces n is the radial reference and
/// the surface normal is d).
Frame impact_frame(const WallHit& hit, const Frame& cylinder_frame) noexcept;

/// Reflection off a flat face whose normal is frame.d: (n, o, -e d).
FrameComponents bounce_flat(FrameComponents v, double restitution);
Vec3 bounce_flat(const Vec3& v, const Frame& frame, double restitution);

/// Reflection off the side wall whose normal is frame.n: (d, o, -e n).
FrameComponents bounce_side(FrameComponents v, double restitution);
Vec3 bounce_side(const Vec3& v, const Frame& frame, double restitution);

/// Moving sphere state for wall resolution.
struct MovingSphere {
  Vec3 start{};
  Vec3 end{};
  Vec3 velocity{};  ///< incoming velocity over the step
  double radius = 0.0;
};

enum class ContactAction : std::uint8_t { Bounce, Absorb };

struct WallResolution {
  Vec3 end{};
  Vec3 velocity{};
  std::uint32_t contacts = 0;
  bool absorbed = false;
  std::optional<WallHit> absorbing_hit;
  bool clamped = false;
};

/// Side-wall resolution loop: backtrack to contact, ask `on_contact` what to do,
/// bounce with `restitution`, replay the remaining (1 - t*) dt, repeat. After
/// `max_contacts` the sphere is projected radially inside.
WallResolution resolve_side_wall(MovingSphere sphere, const domains::Cylinder& cyl, const Frame& frame,
                                 double restitution, double dt,
                                 const std::function<ContactAction(const WallHit&)>& on_contact,
                                 std::uint32_t max_contacts = 4);

/// Projects a center so that the sphere sits strictly inside the side wall.
Vec3 clamp_inside_side(const Vec3& center, double radius, const domains::Cylinder& cyl, const Frame& frame) noexcept;

}  // namespace vesselsim::collision
