#include "vesselsim/vessel/endothelium.hpp"

#include <cmath>
#include <numbers>

#include "vesselsim/core/error.hpp"

namespace vesselsim::vessel {

EndotheliumPlan plan_endothelium(double vessel_radius, double cell_side, double min_ratio) {
  if (!(vessel_radius > 0.0) || !(cell_side > 0.0)) {
    fail(ErrorKind::InvalidParameter, "vessel radius and cell side must be positive");
  }
  EndotheliumPlan p;
  p.circumference = 2.0 * std::numbers::pi * vessel_radius;
  const double ratio = p.circumference / cell_side;
  if (!(ratio >= min_ratio)) {
    fail(ErrorKind::InvalidParameter, "degenerate endothelium: circumference / cell side = " + std::to_string(ratio) +
                                          " is below " + std::to_string(min_ratio));
  }
  p.cells_per_ring = static_cast<std::uint32_t>(std::lround(ratio));
  p.side = p.circumference / p.cells_per_ring;
  p.apothem = vessel_radius * std::cos(std::numbers::pi / p.cells_per_ring);
  p.center_distance = p.apothem + 0.5 * p.side;
  return p;
}

Endothelium place_endothelial_cubes(const EndotheliumPlan& plan, domains::DomainTree& tree, DomainId vessel,
                                    double z_start, double covered_length) {
  Endothelium e;
  e.plan = plan;
  e.z_start = z_start;
  e.rings = covered_length > 0.0 ? static_cast<std::uint32_t>(std::floor(covered_length / plan.side)) : 0;
  const double pitch = 2.0 * std::numbers::pi / plan.cells_per_ring;
  e.cells.reserve(std::size_t{e.rings} * plan.cells_per_ring);
  for (std::uint32_t ring = 0; ring < e.rings; ++ring) {
    const double z = z_start + (ring + 0.5) * plan.side;
    for (std::uint32_t sector = 0; sector < plan.cells_per_ring; ++sector) {
      EndothelialCell c;
      c.index = ring * plan.cells_per_ring + sector;
      c.ring = ring;
      c.sector = sector;
      c.phi = wrap_angle(sector * pitch);
      c.z = z;
      const Frame local = Frame::identity().rotated_about_d(sector * pitch);
      const Vec3 local_center = local.n * plan.center_distance + Vec3{0, 0, z};
      c.domain = tree.attach(vessel, domains::Cube{0.5 * plan.side}, local_center, local, 1.0,
                             domains::WallPolicies::all(domains::WallPolicy::Virtual));
      c.frame = tree.world_frame(c.domain);
      e.cells.push_back(c);
    }
  }
  return e;
}

bool Endothelium::contains(const EndothelialCell& cell, const Vec3& point) const noexcept {
  const FrameComponents c = cell.frame.components(point - cell.frame.origin);
  const double h = 0.5 * plan.side * (1.0 + 1e-12);
  return std::abs(c.n) <= h && std::abs(c.o) <= h && std::abs(c.d) <= h;
}

std::optional<std::uint32_t> Endothelium::cell_at(const Vec3& point, const Frame& vessel_frame) const {
  if (cells.empty()) return std::nullopt;
  const CylindricalCoord cc = to_cylindrical(point, vessel_frame);
  const double pitch = 2.0 * std::numbers::pi / plan.cells_per_ring;
  const auto n = static_cast<long>(plan.cells_per_ring);
  const long sector_guess = std::lround(cc.phi / pitch);
  const long ring_guess = static_cast<long>(std::floor((cc.z - z_start) / plan.side));
  std::optional<std::uint32_t> best;
  for (long dr = -1; dr <= 1; ++dr) {
    const long ring = ring_guess + dr;
    if (ring < 0 || ring >= static_cast<long>(rings)) continue;
    for (long ds = -1; ds <= 1; ++ds) {
      const long sector = ((sector_guess + ds) % n + n) % n;
      const auto idx = static_cast<std::uint32_t>(ring * n + sector);
      if (contains(cells[idx], point) && (!best || idx < *best)) best = idx;
    }
  }
  return best;
}

}  // namespace vesselsim::vessel
