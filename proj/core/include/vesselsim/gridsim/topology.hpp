#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "vesselsim/core/vec3.hpp"

namespace vesselsim::grid {

using PartitionId = std::uint32_t;

/// Faces tagged like a die: opposite faces sum to 7.
enum class Face : std::uint8_t { PosX = 1, PosY = 2, PosZ = 3, NegZ = 4, NegY = 5, NegX = 6 };
inline constexpr std::array<Face, 6> kAllFaces{Face::PosX, Face::PosY, Face::PosZ, Face::NegZ, Face::NegY, Face::NegX};

constexpr Face opposite(Face f) noexcept { return static_cast<Face>(7 - static_cast<int>(f)); }
/// 0 = x, 1 = y, 2 = z.
constexpr int axis_of(Face f) noexcept {
  switch (f) {
    case Face::PosX:
    case Face::NegX: return 0;
    case Face::PosY:
    case Face::NegY: return 1;
    default: return 2;
  }
}
constexpr bool positive(Face f) noexcept { return f == Face::PosX || f == Face::PosY || f == Face::PosZ; }
std::string_view to_string(Face f) noexcept;

struct Box {
  Vec3 lo{};
  Vec3 hi{};
  Vec3 center() const noexcept { return (lo + hi) * 0.5; }
  Vec3 size() const noexcept { return hi - lo; }
};

/// Axis component by index.
double component(const Vec3& v, int axis) noexcept;

struct Partition {
  PartitionId id = 0;
  std::array<std::uint32_t, 3> index{};  ///< (i, j, k) position in the grid
  Box box{};
  /// Neighbor across each face, indexed by face tag - 1.
  std::array<std::optional<PartitionId>, 6> adjacency{};

  Vec3 center() const noexcept { return box.center(); }
  std::optional<PartitionId> neighbor(Face f) const noexcept { return adjacency[static_cast<int>(f) - 1]; }
};

/// Static split of a box into nx x ny x nz equal cells.
///
/// Partitions are numbered column by column along x; inside a column the y
/// order alternates (descending in even columns, ascending in odd ones), and
/// z layers come last. For a 2x2x1 split this gives the cube order
/// (-a,+a), (-a,-a), (+a,-a), (+a,+a) around the origin.
class Topology {
 public:
  Topology() = default;
  Topology(Box bounds, std::uint32_t nx, std::uint32_t ny, std::uint32_t nz);

  const Box& bounds() const noexcept { return bounds_; }
  std::array<std::uint32_t, 3> dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return parts_.size(); }
  const Partition& at(PartitionId id) const { return parts_.at(id); }
  const std::vector<Partition>& partitions() const noexcept { return parts_; }

  PartitionId id_of(std::array<std::uint32_t, 3> index) const noexcept;
  /// Grid cell containing the point; points outside the bounds are clamped to the nearest cell.
  std::array<std::uint32_t, 3> index_of(const Vec3& p) const noexcept;
  PartitionId owner_of(const Vec3& p) const noexcept { return id_of(index_of(p)); }

 private:
  Box bounds_{};
  std::array<std::uint32_t, 3> dims_{1, 1, 1};
  Vec3 cell_{};
  std::vector<Partition> parts_;
  std::vector<PartitionId> by_index_;
};

/// Throws Error(InvalidParameter) for zero counts or an empty box.
Topology split_volume(const Box& bounds, std::uint32_t nx, std::uint32_t ny, std::uint32_t nz);

/// Cubes of side 2a centered around `origin`.
Topology split_cubes(const Vec3& origin, double half_side, std::uint32_t nx, std::uint32_t ny, std::uint32_t nz);

/// Next hop toward the partition owning `destination`: the face neighbor that
/// closes the first differing axis (x, then y, then z). Empty when `from`
/// already owns the destination.
std::optional<Face> route_transfer(const Topology& topo, PartitionId from, const Vec3& destination);

}  // namespace vesselsim::grid
