#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vesselsim/cli/config.hpp"
#include "vesselsim/engine/simulation.hpp"

namespace vesselsim::cli {

struct RunOptions {
  std::filesystem::path out;
  bool plot = false;
  std::optional<std::filesystem::path> resume;
};

struct RunSummary {
  StepIndex steps = 0;
  engine::Ledger ledger{};
  std::vector<std::uint64_t> activated;
  std::size_t footprint_records = 0;
  double seconds = 0.0;
};

/// Partitions for a run: TCP workers when endpoints are configured, otherwise in-process.
std::unique_ptr<engine::PartitionSet> make_partitions(const std::shared_ptr<const vessel::Scenario>& scenario);

/// Runs a scenario and writes steps.csv, footprint.csv, metadata.json, optional
/// checkpoints and plots into `options.out`.
RunSummary run_scenario(const ScenarioConfig& config, const RunOptions& options);

struct BenchOptions {
  std::uint64_t objects = 10000;
  StepIndex steps = 50;
  std::vector<std::array<std::uint32_t, 3>> grids{{1, 1, 1}};
  std::uint32_t workers = 1;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::array<std::uint32_t, 3> grid{};
  std::uint64_t objects = 0;
  double ms_per_step = 0.0;
};

/// Carrier-only cylinder of radius 393.3 um and height 72 um, timed per grid layout.
std::vector<BenchRow> bench_steps(const BenchOptions& options);

struct ScalingRow {
  std::uint64_t n = 0;
  std::uint64_t comparisons = 0;
  double per_n_log_n = 0.0;  ///< comparisons / (n log2 n)
};

enum class ScalingDomain {
  Vessel,  ///< fixed cross-section, length grows with n, reference point on the axis
  Cube,    ///< side grows with n, reference point at a corner
};

/// Broad-phase comparison counts for uniformly scattered unit spheres at a 10%
/// volume fraction.
std::vector<ScalingRow> broad_phase_scaling(const std::vector<std::uint64_t>& sizes, ScalingDomain domain,
                                            std::uint64_t seed);

/// Serves partitions over TCP. With `persist` the worker accepts coordinators until killed.
void run_worker(const std::string& listen, bool persist, std::chrono::milliseconds accept_timeout);

}  // namespace vesselsim::cli
