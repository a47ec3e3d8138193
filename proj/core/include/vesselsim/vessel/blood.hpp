#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "vesselsim/core/nano_object.hpp"
#include "vesselsim/vessel/scenario.hpp"

namespace vesselsim::vessel {

inline constexpr std::uint32_t kPlacementRetries = 10000;
inline constexpr double kPlacementClearance = 1e-12;

/// Uniform-grid spatial hash of spheres for overlap queries during placement.
class Occupancy {
 public:
  explicit Occupancy(double cell_size);
  void add(const Vec3& center, double radius);
  /// True when a sphere at `center` would touch or overlap any stored sphere.
  bool overlaps(const Vec3& center, double radius) const;
  std::size_t size() const noexcept { return spheres_.size(); }

 private:
  struct Sphere {
    Vec3 center;
    double radius;
  };
  std::int64_t coord(double v) const noexcept;
  static std::uint64_t key(std::int64_t i, std::int64_t j, std::int64_t k) noexcept;

  double cell_;
  double max_radius_ = 0.0;
  std::vector<Sphere> spheres_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

/// Fills the vessel by replicating a randomly filled slab with axial shifts
/// and random rotations about the axis. Per-slab counts are
/// concentration x slab volume, rounded with the remainder carried to the next
/// slab. Throws Error(SeedingDensity) when an object cannot be placed within
/// kPlacementRetries attempts.
std::vector<NanoObject> seed_blood(const Scenario& scenario, ObjectId& next_id);

/// Inserts max(0, target - live) objects per kind uniformly in the creation
/// slab at the inlet, avoiding `nearby` (existing objects in that region).
std::vector<NanoObject> maintain_concentration(const Scenario& scenario, std::span<const NanoObject> nearby,
                                               const std::array<std::uint64_t, kKindCount>& live, StepIndex step,
                                               ObjectId& next_id);

/// Axial extent that maintain_concentration needs to see, as [lo, hi] in the vessel frame.
std::pair<double, double> creation_region(const Scenario& scenario);

/// Radial offset of transmitter position index k: (R - r_p) (5 - k) / 5.
double transmitter_radial(std::uint32_t index, double vessel_radius, double platelet_radius);

struct TransmitterPlacement {
  NanoObject transmitter;
  /// Objects that blocked the position, with new positions elsewhere in the vessel.
  std::vector<NanoObject> displaced;
};

/// Places the transmitter platelet at (phi = 0, r_k, transmitter plane). Any
/// object overlapping that spot is resampled elsewhere. Throws Error(Placement)
/// when a blocker cannot be relocated.
TransmitterPlacement place_transmitter(const Scenario& scenario, std::span<const NanoObject> existing,
                                       ObjectId& next_id);

/// B carriers spread uniformly over the transmitter surface, each at distance
/// r_p + r_carrier + epsilon from its center, moving with the local drift.
/// Carriers that would cross the vessel wall are redrawn.
std::vector<NanoObject> emit_burst(const Scenario& scenario, const NanoObject& transmitter, std::uint32_t burst,
                                   ObjectId& next_id);

/// Objects described by the scenario's probe list.
std::vector<NanoObject> make_probes(const Scenario& scenario, ObjectId& next_id);

}  // namespace vesselsim::vessel
