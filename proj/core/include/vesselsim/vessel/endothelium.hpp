#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vesselsim/core/vec3.hpp"
#include "vesselsim/domains/domain.hpp"

namespace vesselsim::vessel {

/// Polygonal tiling of the vessel circumference by endothelial cubes.
struct EndotheliumPlan {
  double circumference = 0.0;
  std::uint32_t cells_per_ring = 0;  ///< N_h
  double side = 0.0;                 ///< approximated cell width c / N_h
  double apothem = 0.0;              ///< R cos(pi / N_h)
  double center_distance = 0.0;      ///< V_h = apothem + side / 2
};

/// N_h = round(2 pi R / d_h), side = 2 pi R / N_h, apothem = R cos(pi / N_h),
/// V_h = apothem + side / 2. Requires 2 pi R / d_h >= min_ratio.
EndotheliumPlan plan_endothelium(double vessel_radius, double cell_side, double min_ratio = 3.0);

/// One endothelial cell: a cube domain whose inner face is tangent to the
/// polygon inscribed in the vessel cross-section.
struct EndothelialCell {
  std::uint32_t index = 0;  ///< ring * N_h + sector
  std::uint32_t ring = 0;
  std::uint32_t sector = 0;
  DomainId domain = kNoDomain;
  double phi = 0.0;  ///< angle of the cube center about the vessel axis
  double z = 0.0;    ///< axial coordinate of the cube center (vessel frame)
  Frame frame{};     ///< world frame: n radial outward, d along the vessel axis
};

struct Endothelium {
  EndotheliumPlan plan{};
  double z_start = 0.0;  ///< vessel-frame axial coordinate of the first ring's upstream face
  std::uint32_t rings = 0;
  std::vector<EndothelialCell> cells;

  /// Cell whose cube contains `point` (a point on the vessel wall), lowest index on ties.
  std::optional<std::uint32_t> cell_at(const Vec3& point, const Frame& vessel_frame) const;
  /// Cube membership test in world coordinates.
  bool contains(const EndothelialCell& cell, const Vec3& point) const noexcept;
};

/// Rings of N_h cubes starting at axial coordinate `z_start` of the vessel
/// frame; ring k is centered at z_start + (k + 1/2) side and the ring count is
/// floor(covered_length / side). Cubes are attached to `vessel` with virtual walls.
Endothelium place_endothelial_cubes(const EndotheliumPlan& plan, domains::DomainTree& tree, DomainId vessel,
                                    double z_start, double covered_length);

}  // namespace vesselsim::vessel
