#pragma once

#include <cstdint>

#include "vesselsim/core/nano_object.hpp"
#include "vesselsim/core/rng.hpp"
#include "vesselsim/core/vec3.hpp"

namespace vesselsim::motion {

/// Laminar flow in a straight cylindrical vessel along axis.d.
struct FlowProfile {
  double mean_velocity = 0.0;  ///< m/s, cross-section average
  double vessel_radius = 0.0;  ///< m
  Frame axis{};
};

/// Axial Poiseuille speed 2 v_mean (1 - (r/R)^2). Radii beyond R give 0 and,
/// when `clamped` is non-null, set it to true.
double poiseuille_velocity(double r, const FlowProfile& profile, bool* clamped = nullptr);

/// Drift velocity vector at a point.
Vec3 drift_velocity(const Vec3& point, const FlowProfile& profile, bool* clamped = nullptr);

/// sqrt(2 D dt) g per axis, g from slots 0..2 of `step` on the object's stream.
Vec3 brownian_displacement(double diffusion, double dt, const RngKey& key, StepIndex step);

struct MotionResult {
  Vec3 center{};
  Vec3 velocity{};  ///< step-average velocity, (center - start) / dt, or the kept velocity
  bool drift_clamped = false;
};

/// One motion step for an object that starts the step at `obj.center`.
/// Advected: drift re-imposed from the profile, plus Brownian noise.
/// Ballistic: straight line at the stored velocity. Fixed: no change.
MotionResult advance(const NanoObject& obj, const FlowProfile& profile, double diffusion, double dt,
                     std::uint64_t seed, StepIndex step);

}  // namespace vesselsim::motion
