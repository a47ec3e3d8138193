#pragma once

#include <utility>

#include "vesselsim/core/vec3.hpp"

namespace vesselsim::collision {

struct TwoBodyResult {
  Vec3 v1{};
  Vec3 v2{};
};

/// Partially inelastic sphere-sphere impact. `normal` points from body 1 to
/// body 2 and need not be unit length. Only the normal components change; they
/// are transformed in the center-of-mass frame:
///   v1f' = ((m1 - e m2) v1i' + m2 (1 + e) v2i') / (m1 + m2)
///   v2f' = ((m2 - e m1) v2i' + m1 (1 + e) v1i') / (m1 + m2)
/// Throws InvalidParameter for a zero normal, non-positive masses or e outside [0, 1].
TwoBodyResult resolve_two_body(const Vec3& v1, const Vec3& v2, double m1, double m2, double restitution,
                               const Vec3& normal);

/// Post/pre kinetic energy of the normal components in the center-of-mass frame.
/// NaN when the pre-collision normal energy is zero.
double cm_kinetic_energy_ratio(const Vec3& v1_pre, const Vec3& v2_pre, const Vec3& v1_post, const Vec3& v2_post,
                               double m1, double m2, const Vec3& normal);

inline constexpr double kSeparationEpsilon = 1e-12;

/// Displacements that push two overlapping spheres apart along the line of
/// centers by overlap/2 + epsilon each. Zero when they do not overlap.
/// Concentric spheres are separated along +x.
std::pair<Vec3, Vec3> separation_displacements(const Vec3& c1, double r1, const Vec3& c2, double r2);

/// Fraction of the step at which two spheres moving linearly from (s1, s2) to
/// (e1, e2) first touch. 0 if they already touch at the start, 1 if they never do.
double pair_contact_fraction(const Vec3& s1, const Vec3& e1, const Vec3& s2, const Vec3& e2, double reach);

}  // namespace vesselsim::collision
