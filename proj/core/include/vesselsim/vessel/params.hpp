#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vesselsim/core/nano_object.hpp"
#include "vesselsim/core/vec3.hpp"

namespace vesselsim::vessel {

/// Per-kind blood parameters, SI units.
struct KindParams {
  double concentration = 0.0;  ///< objects per m^3
  double radius = 0.0;         ///< m
  double density = 1000.0;     ///< kg/m^3
  friend bool operator==(const KindParams&, const KindParams&) = default;
};

/// A hand-placed object, used to drive specific scenarios (for example forced
/// partition crossings). Positions are world coordinates.
struct ProbeSpec {
  Kind kind = Kind::Platelet;
  Mobility mobility = Mobility::Ballistic;
  Vec3 center{};
  Vec3 velocity{};
  double radius = 0.0;  ///< 0 means the kind's default radius
  friend bool operator==(const ProbeSpec&, const ProbeSpec&) = default;
};

struct GridSpec {
  std::uint32_t nx = 1;
  std::uint32_t ny = 1;
  std::uint32_t nz = 1;
  std::vector<std::string> endpoints;  ///< host:port per partition; empty means in-process
  std::uint32_t timeout_ms = 30000;
  bool enabled() const noexcept { return nx * ny * nz > 1 || !endpoints.empty(); }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Complete, SI-unit description of a run. Defaults reproduce Table 1 of the
/// reference scenario.
struct ScenarioParams {
  // vessel
  double vessel_radius = 30e-6;
  double vessel_length = 2.6e-3;
  double mean_flow_velocity = 0.5e-3;
  double viscosity = 0.0013;
  double temperature = 310.0;
  double wall_restitution = 0.6;

  // endothelium
  double cell_side = 15e-6;
  std::uint32_t receptors_per_cell = 1000;
  double receptor_radius = 4e-9;
  double lead_in = 400e-6;  ///< bare wall between the inlet and the first ring

  // blood, indexed by Kind
  std::array<KindParams, kKindCount> kinds{{
      {0.0, 1.75e-9, 1000.0},    // carrier (sCD40L)
      {2e5 * 1e9, 1e-6, 1000.0},  // platelet
      {4e6 * 1e9, 3.5e-6, 1000.0},  // red cell
      {4e3 * 1e9, 5e-6, 1000.0},  // white cell
  }};
  double creation_slab = 7e-6;
  double cell_restitution = 0.6;
  std::uint32_t white_receptors = 1000;
  double white_receptor_radius = 4e-9;
  bool platelet_receptors = false;
  std::uint32_t platelet_receptor_count = 1000;
  double platelet_receptor_radius = 4e-9;
  bool carrier_collisions = true;
  bool seed_blood = true;
  bool continuous_creation = true;

  // transmitter
  bool transmitter = true;
  std::uint32_t position_index = 0;  ///< 0 = L0 (wall) ... 5 = L5 (axis)
  double transmitter_offset = 400e-6;  ///< past the first endothelial ring
  std::uint32_t burst_size = 3000;
  StepIndex emit_step = 40000;

  // run
  StepIndex steps = 40000 + 480000;
  double dt = 5e-6;
  std::uint64_t seed = 1;
  std::uint32_t workers = 1;
  std::uint32_t fanout = 4;
  StepIndex checkpoint_every = 0;
  StepIndex output_every = 1;
  std::vector<std::uint32_t> thresholds{1, 2, 5, 10};

  GridSpec grid{};
  std::vector<ProbeSpec> probes;

  const KindParams& kind(Kind k) const noexcept { return kinds[index_of(k)]; }
  KindParams& kind(Kind k) noexcept { return kinds[index_of(k)]; }

  friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

/// Lossless SI serialization (doubles printed with round-trip precision).
nlohmann::json to_json(const ScenarioParams& p);
/// Strict inverse of to_json: every key must be known. Throws Error(InvalidParameter).
ScenarioParams params_from_json(const nlohmann::json& j);

/// Structural checks shared by every entry point. Throws Error(InvalidParameter).
void check_params(const ScenarioParams& p);

}  // namespace vesselsim::vessel
