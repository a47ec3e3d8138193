#include "vesselsim/core/physics.hpp"

#include <cmath>
#include <numbers>

#include "vesselsim/core/error.hpp"
#include "vesselsim/core/units.hpp"

namespace vesselsim {

double diffusion_coefficient(double radius, double temperature, double viscosity) {
  if (!(radius > 0.0) || !(temperature > 0.0) || !(viscosity > 0.0)) {
    fail(ErrorKind::InvalidParameter, "diffusion_coefficient: radius, temperature and viscosity must be > 0");
  }
  return units::boltzmann * temperature / (6.0 * std::numbers::pi * viscosity * radius);
}

double mass_of(double radius, double density) {
  if (!(radius > 0.0) || !(density > 0.0)) {
    fail(ErrorKind::InvalidParameter, "mass_of: radius and density must be > 0");
  }
  return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius * density;
}

}  // namespace vesselsim
