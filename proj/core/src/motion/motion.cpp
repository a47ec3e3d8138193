#include "vesselsim/motion/motion.hpp"

#include <cmath>

namespace vesselsim::motion {

double poiseuille_velocity(double r, const FlowProfile& profile, bool* clamped) {
  const double R = profile.vessel_radius;
  if (r > R) {
    if (clamped) *clamped = true;
    return 0.0;
  }
  const double q = r / R;
  return 2.0 * profile.mean_velocity * (1.0 - q * q);
}

Vec3 drift_velocity(const Vec3& point, const FlowProfile& profile, bool* clamped) {
  const FrameComponents c = profile.axis.components(point - profile.axis.origin);
  return profile.axis.d * poiseuille_velocity(std::hypot(c.n, c.o), profile, clamped);
}

Vec3 brownian_displacement(double diffusion, double dt, const RngKey& key, StepIndex step) {
  if (diffusion <= 0.0) return {};
  const double sigma = std::sqrt(2.0 * diffusion * dt);
  return {sigma * draw_gaussian(key, step, 0), sigma * draw_gaussian(key, step, 1),
          sigma * draw_gaussian(key, step, 2)};
}

MotionResult advance(const NanoObject& obj, const FlowProfile& profile, double diffusion, double dt,
                     std::uint64_t seed, StepIndex step) {
  MotionResult out;
  switch (obj.mobility) {
    case Mobility::Fixed:
      out.center = obj.center;
      out.velocity = {};
      return out;
    case Mobility::Ballistic:
      out.center = obj.center + obj.velocity * dt;
      out.velocity = obj.velocity;
      return out;
    case Mobility::Advected:
      break;
  }
  const Vec3 drift = drift_velocity(obj.center, profile, &out.drift_clamped);
  const Vec3 noise = brownian_displacement(diffusion, dt, {seed, obj.rng_stream}, step);
  out.center = obj.center + drift * dt + noise;
  out.velocity = (out.center - obj.center) / dt;
  return out;
}

}  // namespace vesselsim::motion
