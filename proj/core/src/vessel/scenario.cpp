#include "vesselsim/vessel/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vesselsim/core/error.hpp"
#include "vesselsim/core/physics.hpp"
#include "vesselsim/core/rng.hpp"

namespace vesselsim::vessel {

std::shared_ptr<const Scenario> Scenario::build(const ScenarioParams& params) {
  return std::shared_ptr<const Scenario>(new Scenario(params));
}

Scenario::Scenario(const ScenarioParams& params) : params_(params) {
  check_params(params_);
  cylinder_ = {params_.vessel_radius, params_.vessel_length};
  vessel_ = tree_.attach(tree_.root(), cylinder_, {}, Frame::identity(), params_.wall_restitution,
                         {domains::WallPolicy::Bounce, domains::WallPolicy::Absorb, domains::WallPolicy::Absorb});
  frame_ = tree_.world_frame(vessel_);
  flow_ = {params_.mean_flow_velocity, params_.vessel_radius, frame_};

  const EndotheliumPlan plan = plan_endothelium(params_.vessel_radius, params_.cell_side);
  const double z_start = -half_length() + params_.lead_in;
  endothelium_ = place_endothelial_cubes(plan, tree_, vessel_, z_start, params_.vessel_length - params_.lead_in);

  fields_.reserve(endothelium_.cells.size());
  for (const auto& cell : endothelium_.cells) {
    std::vector<ReceptorField::Entry> kept;
    for (const auto& r : scatter_receptors(cell.index, params_.receptors_per_cell, plan.side, params_.seed)) {
      const auto p = project_receptor(r, cell, plan, params_.vessel_radius);
      if (p.kept) kept.push_back({r.id, p.phi_offset, p.axial_offset});
    }
    fields_.emplace_back(std::move(kept), plan.side, params_.vessel_radius);
  }

  for (Kind k : kAllKinds) {
    const auto& kp = params_.kind(k);
    kinds_[index_of(k)] = {kp.radius, mass_of(kp.radius, kp.density), diffusion(kp.radius)};
    max_radius_ = std::max(max_radius_, kp.radius);
  }
  for (const auto& probe : params_.probes) max_radius_ = std::max(max_radius_, probe.radius);
}

double Scenario::volume() const noexcept {
  return std::numbers::pi * params_.vessel_radius * params_.vessel_radius * params_.vessel_length;
}

std::array<std::uint64_t, kKindCount> Scenario::target_counts() const noexcept {
  std::array<std::uint64_t, kKindCount> out{};
  for (Kind k : kAllKinds) {
    if (k == Kind::Carrier) continue;
    out[index_of(k)] = static_cast<std::uint64_t>(std::llround(params_.kind(k).concentration * volume()));
  }
  return out;
}

double Scenario::diffusion(double radius) const {
  return diffusion_coefficient(radius, params_.temperature, params_.viscosity);
}

bool Scenario::fits(const Vec3& center, double radius, double clearance) const noexcept {
  const FrameComponents c = frame_.components(center - frame_.origin);
  return std::hypot(c.n, c.o) + radius + clearance < cylinder_.radius &&
         std::abs(c.d) + radius + clearance < 0.5 * cylinder_.height;
}

std::optional<WallAssimilation> Scenario::wall_assimilation(const Vec3& impact, double carrier_radius) const {
  const auto cell = endothelium_.cell_at(impact, frame_);
  if (!cell) return std::nullopt;
  const auto& ec = endothelium_.cells[*cell];
  const CylindricalCoord cc = to_cylindrical(impact, frame_);
  const auto receptor = fields_[*cell].nearest_within(wrap_angle(cc.phi - ec.phi), cc.z - ec.z,
                                                      params_.receptor_radius + carrier_radius);
  if (!receptor) return std::nullopt;
  return WallAssimilation{*cell, *receptor};
}

bool Scenario::has_receptors(Kind k) const noexcept {
  switch (k) {
    case Kind::WhiteCell: return params_.white_receptors > 0;
    case Kind::Platelet: return params_.platelet_receptors && params_.platelet_receptor_count > 0;
    default: return false;
  }
}

std::optional<std::uint32_t> Scenario::cell_assimilation(const NanoObject& cell, const Vec3& dir,
                                                         double carrier_radius) const {
  if (!has_receptors(cell.kind)) return std::nullopt;
  const bool white = cell.kind == Kind::WhiteCell;
  const auto count = white ? params_.white_receptors : params_.platelet_receptor_count;
  const double rr = white ? params_.white_receptor_radius : params_.platelet_receptor_radius;
  const auto dirs = sphere_receptor_directions(params_.seed, make_stream(StreamTag::WhiteReceptors, cell.id), count);
  return nearest_sphere_receptor(dirs, cell.radius, dir, rr + carrier_radius);
}

NanoObject Scenario::make_object(ObjectId id, Kind k, const Vec3& center) const {
  NanoObject o;
  o.id = id;
  o.kind = k;
  o.mobility = Mobility::Advected;
  o.center = center;
  o.start = center;
  o.velocity = motion::drift_velocity(center, flow_);
  o.radius = kinds_[index_of(k)].radius;
  o.mass = kinds_[index_of(k)].mass;
  o.rng_stream = make_stream(StreamTag::Object, id);
  o.owner_domain = vessel_;
  return o;
}

}  // namespace vesselsim::vessel
