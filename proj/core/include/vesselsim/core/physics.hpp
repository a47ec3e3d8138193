#pragma once

namespace vesselsim {

/// Stokes-Einstein diffusion coefficient D = kB T / (6 pi eta r), in m^2/s.
/// Throws Error(InvalidParameter) unless every input is positive.
double diffusion_coefficient(double radius, double temperature, double viscosity);

/// Mass of a uniform sphere, (4/3) pi r^3 rho.
double mass_of(double radius, double density);

inline constexpr double kDefaultDensity = 1000.0;  // kg/m^3

}  // namespace vesselsim
