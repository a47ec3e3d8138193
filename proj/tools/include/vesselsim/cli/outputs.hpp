#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vesselsim/cli/config.hpp"
#include "vesselsim/engine/simulation.hpp"

namespace vesselsim::cli {

std::string_view version() noexcept;

/// steps.csv: fixed column order, dot decimals, shortest round-trip doubles.
std::string steps_header(const std::vector<std::uint32_t>& thresholds);
std::string steps_row(const engine::StepReport& r);

/// footprint.csv: threshold, cell_id, phi_rad, z_um, t_activation_s, assimilated.
std::string footprint_header();
std::string footprint_row(const reception::ActivationRecord& r);
void write_footprint(const std::filesystem::path& path, const std::vector<reception::ActivationRecord>& records);

/// Modelling choices active in a run, each with a short description.
nlohmann::json assumptions(const vessel::ScenarioParams& p);
nlohmann::json metadata(const ScenarioConfig& config, const std::string& partitions);

/// Parsed run outputs.
struct StepsTable {
  std::vector<std::uint32_t> thresholds;
  std::vector<double> time;
  std::vector<std::vector<std::uint64_t>> activated;  ///< [row][threshold]
};
StepsTable read_steps(const std::filesystem::path& path);
std::vector<reception::ActivationRecord> read_footprint(const std::filesystem::path& path);

struct Extent {
  std::uint32_t threshold = 0;
  std::size_t cells = 0;
  double phi_min = 0.0, phi_max = 0.0;
  double z_min = 0.0, z_max = 0.0;  ///< um
  double t_min = 0.0, t_max = 0.0;
};
/// One entry per threshold with at least one activation.
std::vector<Extent> footprint_extents(const std::vector<reception::ActivationRecord>& records);

/// Human-readable summary of a results directory.
void write_report(std::ostream& out, const std::filesystem::path& dir, std::size_t rows = 10);

/// Standalone SVG plots: activated count against time, and the footprint for one threshold.
std::string activation_svg(const StepsTable& steps);
std::string footprint_svg(const std::vector<reception::ActivationRecord>& records, std::uint32_t threshold);

}  // namespace vesselsim::cli
