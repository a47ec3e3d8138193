#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "vesselsim/collision/cylinder.hpp"
#include "vesselsim/core/nano_object.hpp"
#include "vesselsim/domains/domain.hpp"
#include "vesselsim/motion/motion.hpp"
#include "vesselsim/vessel/endothelium.hpp"
#include "vesselsim/vessel/params.hpp"
#include "vesselsim/vessel/receptors.hpp"

namespace vesselsim::vessel {

struct KindConstants {
  double radius = 0.0;
  double mass = 0.0;
  double diffusion = 0.0;
};

struct WallAssimilation {
  std::uint32_t cell = 0;
  std::uint32_t receptor = 0;
};

/// Immutable geometry of a run: the vessel domain with its endothelial cubes
/// and projected receptors, the flow profile, and per-kind constants. Every
/// partition shares one instance.
class Scenario {
 public:
  static std::shared_ptr<const Scenario> build(const ScenarioParams& params);

  const ScenarioParams& params() const noexcept { return params_; }
  const domains::DomainTree& tree() const noexcept { return tree_; }
  DomainId vessel_domain() const noexcept { return vessel_; }
  const domains::Cylinder& cylinder() const noexcept { return cylinder_; }
  const Frame& frame() const noexcept { return frame_; }
  const motion::FlowProfile& flow() const noexcept { return flow_; }
  const Endothelium& endothelium() const noexcept { return endothelium_; }
  const ReceptorField& receptors(std::uint32_t cell) const { return fields_.at(cell); }
  const KindConstants& kind(Kind k) const noexcept { return kinds_[index_of(k)]; }

  double half_length() const noexcept { return 0.5 * params_.vessel_length; }
  double inlet_z() const noexcept { return -half_length(); }
  double endothelium_start() const noexcept { return endothelium_.z_start; }
  /// Axial coordinate of the transmitter plane (footprint z is measured from it).
  double transmitter_z() const noexcept { return endothelium_start() + params_.transmitter_offset; }
  double volume() const noexcept;
  /// Largest radius any object of the run can have.
  double max_radius() const noexcept { return max_radius_; }
  /// round(concentration * volume) per kind.
  std::array<std::uint64_t, kKindCount> target_counts() const noexcept;

  /// Diffusion coefficient for an object of the given radius.
  double diffusion(double radius) const;

  /// Sphere strictly inside the side wall and clear of both end faces.
  bool fits(const Vec3& center, double radius, double clearance = 0.0) const noexcept;

  /// Receptor hit by a carrier touching the side wall at `impact` (a wall point).
  std::optional<WallAssimilation> wall_assimilation(const Vec3& impact, double carrier_radius) const;

  /// Receptor of a spherical cell (white cell, or platelet when enabled) hit by
  /// a carrier touching it in direction `dir` from the cell center.
  std::optional<std::uint32_t> cell_assimilation(const NanoObject& cell, const Vec3& dir, double carrier_radius) const;
  bool has_receptors(Kind k) const noexcept;

  /// Fresh object of kind k at `center` with the local drift velocity.
  NanoObject make_object(ObjectId id, Kind k, const Vec3& center) const;

 private:
  explicit Scenario(const ScenarioParams& params);

  ScenarioParams params_;
  domains::DomainTree tree_;
  DomainId vessel_ = kNoDomain;
  domains::Cylinder cylinder_{};
  Frame frame_{};
  motion::FlowProfile flow_{};
  Endothelium endothelium_{};
  std::vector<ReceptorField> fields_;
  std::array<KindConstants, kKindCount> kinds_{};
  double max_radius_ = 0.0;
};

}  // namespace vesselsim::vessel
