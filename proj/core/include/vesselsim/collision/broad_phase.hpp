#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vesselsim/core/nano_object.hpp"
#include "vesselsim/core/vec3.hpp"

namespace vesselsim {
class ThreadPool;
}

namespace vesselsim::collision {

/// Unordered object pair stored canonically with a < b.
struct CandidatePair {
  ObjectId a = 0;
  ObjectId b = 0;

  static CandidatePair of(ObjectId x, ObjectId y) noexcept { return x < y ? CandidatePair{x, y} : CandidatePair{y, x}; }
  friend constexpr auto operator<=>(const CandidatePair&, const CandidatePair&) = default;
};

struct BroadPhaseStats {
  std::uint64_t sort_comparisons = 0;
  std::uint64_t sweep_comparisons = 0;
  std::uint64_t total() const noexcept { return sort_comparisons + sweep_comparisons; }
};

/// Minimal view of a sphere for collision queries.
struct SphereRef {
  ObjectId id = 0;
  Vec3 center{};
  double radius = 0.0;
};

/// Sort-and-sweep over the distance from `reference_point`: every returned pair
/// has overlapping [dist - r, dist + r] intervals, and every pair that overlaps
/// in 3D is returned. Output is sorted.
std::vector<CandidatePair> broad_phase(std::span<const SphereRef> objects, const Vec3& reference_point,
                                       BroadPhaseStats* stats = nullptr, ThreadPool* pool = nullptr);

/// Tangent spheres count as colliding.
bool sphere_sphere_test(const Vec3& ca, double ra, const Vec3& cb, double rb) noexcept;
inline bool sphere_sphere_test(const NanoObject& a, const NanoObject& b) noexcept {
  return sphere_sphere_test(a.center, a.radius, b.center, b.radius);
}

/// broad_phase followed by the exact 3D check.
std::vector<CandidatePair> overlapping_pairs(std::span<const SphereRef> objects, const Vec3& reference_point,
                                             BroadPhaseStats* stats = nullptr, ThreadPool* pool = nullptr);

/// O(n^2) reference used by tests and as a fallback for tiny sets.
std::vector<CandidatePair> overlapping_pairs_brute_force(std::span<const SphereRef> objects);

}  // namespace vesselsim::collision
