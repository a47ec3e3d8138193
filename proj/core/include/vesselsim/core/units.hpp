#pragma once

// Internal units are SI. These factors convert configuration units at ingest.

namespace vesselsim::units {

inline constexpr double meter = 1.0;
inline constexpr double millimeter = 1e-3;
inline constexpr double micrometer = 1e-6;
inline constexpr double nanometer = 1e-9;

inline constexpr double second = 1.0;
inline constexpr double microsecond = 1e-6;

inline constexpr double mm_per_s = 1e-3;

/// Number concentration: 1 per mm^3 expressed per m^3.
inline constexpr double per_mm3 = 1e9;

inline constexpr double boltzmann = 1.380649e-23;  // J/K, exact SI value

}  // namespace vesselsim::units
