#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vesselsim/vessel/params.hpp"

namespace vesselsim::cli {

/// A run as described by a configuration file.
struct ScenarioConfig {
  vessel::ScenarioParams params{};
  std::filesystem::path output_dir = "out";
};

/// Converts every dimensioned value to SI. Values may be plain numbers (SI) or
/// strings such as "30 um", "0.5 mm/s" or "4e6 /mm3". Throws Error(InvalidParameter)
/// listing every offending path.
nlohmann::json resolve_units(const nlohmann::json& config);

/// Parses a configuration document: unit resolution, strict key check, parameter checks.
ScenarioConfig parse_config(const nlohmann::json& config);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Smallest accepted ring size 2 pi R / d_h for a run.
inline constexpr double kMinRingRatio = 5.0;

/// Quantities derived from a configuration, echoed by `validate`.
struct Derived {
  double ring_ratio = 0.0;  ///< 2 pi R / d_h
  std::uint32_t cells_per_ring = 0;
  double cell_width = 0.0;
  double apothem = 0.0;
  double center_distance = 0.0;
  std::uint32_t rings = 0;
  double volume = 0.0;
  std::array<double, kKindCount> expected{};  ///< concentration * volume
  double red_volume_fraction = 0.0;
};

/// Throws Error(InvalidParameter) when the ring ratio is below kMinRingRatio.
Derived derive(const vessel::ScenarioParams& p);

/// "NXxNYxNZ", for example "2x2x1".
std::array<std::uint32_t, 3> parse_grid(const std::string& text);

}  // namespace vesselsim::cli
