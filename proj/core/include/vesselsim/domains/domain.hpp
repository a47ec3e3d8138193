#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "vesselsim/core/nano_object.hpp"
#include "vesselsim/core/vec3.hpp"

namespace vesselsim::domains {

struct Unbounded {};
struct Sphere {
  double radius = 0.0;
};
struct Cube {
  double half_side = 0.0;
};
/// Cylinder along its frame's d axis, centered on the domain center.
struct Cylinder {
  double radius = 0.0;
  double height = 0.0;
};

using DomainShape = std::variant<Unbounded, Sphere, Cube, Cylinder>;

enum class WallPolicy : std::uint8_t {
  Bounce,   ///< reflect with the domain's restitution coefficient
  Absorb,   ///< destroy the object (it left the area of interest)
  Virtual,  ///< no interaction at all
};

std::string_view to_string(WallPolicy p) noexcept;

struct WallPolicies {
  WallPolicy side = WallPolicy::Bounce;
  WallPolicy top = WallPolicy::Bounce;
  WallPolicy bottom = WallPolicy::Bounce;

  static constexpr WallPolicies all(WallPolicy p) noexcept { return {p, p, p}; }
};

struct Domain {
  DomainId id = kNoDomain;
  DomainShape shape = Unbounded{};
  /// Center relative to the parent, in the parent's local axes.
  Vec3 local_center{};
  /// Orientation relative to the parent (origin ignored).
  Frame local_frame{};
  std::optional<DomainId> parent;
  std::vector<DomainId> children;
  std::set<ObjectId> objects;
  double restitution = 1.0;
  WallPolicies walls{};
  bool attached = true;
};

struct BoundingSphere {
  Vec3 center{};
  double radius = 0.0;
};

/// Hierarchy of nested spatial domains. The root is always Unbounded and sits at
/// the world origin with the identity frame.
class DomainTree {
 public:
  DomainTree();

  DomainId root() const noexcept { return 0; }
  std::size_t size() const noexcept { return domains_.size(); }

  DomainId attach(DomainId parent, DomainShape shape, Vec3 local_center, Frame local_frame = Frame::identity(),
                  double restitution = 1.0, WallPolicies walls = {});

  /// Detach a subtree. Its objects are handed to the former parent so that every
  /// object keeps exactly one owner.
  void detach(DomainId id);

  const Domain& get(DomainId id) const;

  Vec3 world_center(DomainId id) const;
  Frame world_frame(DomainId id) const;
  BoundingSphere bounding_sphere(DomainId id) const;

  void add_object(DomainId domain, ObjectId object);
  void remove_object(ObjectId object);
  void move_object(ObjectId object, DomainId to);
  std::optional<DomainId> owner_of(ObjectId object) const;
  std::size_t object_count() const noexcept { return owner_.size(); }

  /// Throws Error(Structural) when the tree or the ownership map is inconsistent.
  void check_integrity() const;

 private:
  Domain& mutable_get(DomainId id);

  std::vector<Domain> domains_;
  std::unordered_map<ObjectId, DomainId> owner_;
};

/// Closed 1D interval along the distance-from-reference-point axis.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

enum class Overlap : std::uint8_t { NoOverlap, MayCollide };

/// [c - r, c + r] for a sphere whose center is at 1D coordinate c.
Interval interval_around(double coordinate, double radius) noexcept;

/// Closed-interval overlap test; throws Error(InvalidParameter) for inverted intervals.
Overlap interval_prefilter(Interval domain, Interval object);

/// Interval index sorted by lower bound, answering "which entries may overlap?".
class IntervalIndex {
 public:
  struct Entry {
    Interval span;
    std::uint64_t id = 0;
  };

  IntervalIndex() = default;
  explicit IntervalIndex(std::vector<Entry> entries);

  /// Ids of entries overlapping `query`, ascending by lower bound then id.
  void query(Interval query, std::vector<std::uint64_t>& out) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
  double max_width_ = 0.0;
};

/// Candidate (object, inner domain) pairs of `parent`: exactly those whose
/// bounding-sphere distance intervals overlap, measured from the parent's center.
std::vector<std::pair<ObjectId, DomainId>> sweep_inner_domains(const DomainTree& tree, DomainId parent,
                                                               std::span<const NanoObject> objects);

}  // namespace vesselsim::domains
