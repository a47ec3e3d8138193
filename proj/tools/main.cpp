#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "vesselsim/cli/config.hpp"
#include "vesselsim/cli/outputs.hpp"
#include "vesselsim/cli/run.hpp"
#include "vesselsim/core/error.hpp"

using namespace vesselsim;

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("vesselsim");
  logger->set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::info);
  if (const char* level = std::getenv("VESSELSIM_LOG")) {
    const auto l = spdlog::level::from_str(level);
    if (l == spdlog::level::off && std::string_view(level) != "off") {
      spdlog::warn("VESSELSIM_LOG={} not understood; use trace, debug, info, warn, error or off", level);
    } else {
      spdlog::set_level(l);
    }
  }
}

void print_validation(const cli::ScenarioConfig& c, bool as_json) {
  if (as_json) {
    nlohmann::json j = vessel::to_json(c.params);
    j["output_dir"] = c.output_dir.string();
    std::cout << j.dump(2) << '\n';
    return;
  }
  const auto d = cli::derive(c.params);
  const auto& p = c.params;
  fmt::print("config ok\n");
  fmt::print("  2 pi R / d_h        {:.4f}\n", d.ring_ratio);
  fmt::print("  N_h                 {}\n", d.cells_per_ring);
  fmt::print("  cell width d~_h     {:.4f} um\n", d.cell_width * 1e6);
  fmt::print("  apothem             {:.4f} um\n", d.apothem * 1e6);
  fmt::print("  cube center V_h     {:.4f} um\n", d.center_distance * 1e6);
  fmt::print("  rings               {} ({} cells)\n", d.rings, d.rings * d.cells_per_ring);
  fmt::print("  vessel volume       {:.6g} um^3\n", d.volume * 1e18);
  for (Kind k : {Kind::Platelet, Kind::RedCell, Kind::WhiteCell}) {
    fmt::print("  expected {:<10} {:.2f}\n", to_string(k), d.expected[index_of(k)]);
  }
  fmt::print("  red volume fraction {:.4f}\n", d.red_volume_fraction);
  fmt::print("  time step           {:g} us, {} steps ({:g} s)\n", p.dt * 1e6, p.steps,
             static_cast<double>(p.steps) * p.dt);
  fmt::print("  transmitter         {} at L{}, burst {} at step {}\n", p.transmitter ? "on" : "off", p.position_index,
             p.burst_size, p.emit_step);
  fmt::print("  output directory    {}\n", c.output_dir.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nanoscale communication in a blood vessel: particle simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cli::version()));

  std::string config_path;
  bool as_json = false;
  auto* validate = app.add_subcommand("validate", "Check a configuration and echo derived quantities");
  validate->add_option("--config", config_path, "JSON configuration")->required()->check(CLI::ExistingFile);
  validate->add_flag("--json", as_json, "Print the normalized SI configuration");

  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> workers;
  std::string grid;
  std::optional<std::string> out;
  std::optional<std::string> resume;
  std::vector<std::string> endpoints;
  bool plot = false;
  auto* run = app.add_subcommand("run", "Run a scenario");
  run->add_option("--config", config_path, "JSON configuration")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the seed");
  run->add_option("--workers", workers, "Threads per partition");
  run->add_option("--grid", grid, "Partition layout NXxNYxNZ");
  run->add_option("--endpoints", endpoints, "host:port of a worker per partition")->delimiter(',');
  run->add_option("--out", out, "Output directory");
  run->add_option("--resume", resume, "Continue from a checkpoint file")->check(CLI::ExistingFile);
  run->add_flag("--plot", plot, "Write SVG plots");

  std::string dir;
  std::size_t rows = 10;
  auto* report = app.add_subcommand("report", "Summarize a results directory");
  report->add_option("--dir", dir, "Directory written by run")->required()->check(CLI::ExistingDirectory);
  report->add_option("--rows", rows, "Rows of the activation table")->check(CLI::PositiveNumber);

  cli::BenchOptions bench_opts;
  std::vector<std::string> bench_grids;
  bool scaling = false;
  auto* bench = app.add_subcommand("bench", "Time steps on this machine for several partition layouts");
  bench->add_option("--objects", bench_opts.objects, "Carriers in the benchmark cylinder")->check(CLI::PositiveNumber);
  bench->add_option("--steps", bench_opts.steps, "Timed steps per layout")->check(CLI::PositiveNumber);
  bench->add_option("--grid", bench_grids, "Layouts NXxNYxNZ, comma separated")->delimiter(',');
  bench->add_option("--workers", bench_opts.workers, "Threads per partition");
  bench->add_flag("--scaling", scaling, "Also print broad-phase comparison counts for n = 1e3, 1e4, 1e5");

  std::string listen;
  bool persist = false;
  std::uint32_t accept_ms = 0;
  auto* worker = app.add_subcommand("worker", "Serve partitions to a coordinator over TCP");
  worker->add_option("--listen", listen, "host:port")->required();
  worker->add_flag("--persist", persist, "Keep serving after a coordinator disconnects");
  worker->add_option("--accept-timeout-ms", accept_ms, "Give up waiting for a coordinator (0 waits forever)");

  CLI11_PARSE(app, argc, argv);
  setup_logging();

  try {
    if (*validate) {
      print_validation(cli::load_config(config_path), as_json);
    } else if (*run) {
      auto config = cli::load_config(config_path);
      auto& p = config.params;
      if (seed) p.seed = *seed;
      if (workers) p.workers = *workers;
      if (!grid.empty()) {
        const auto g = cli::parse_grid(grid);
        p.grid.nx = g[0];
        p.grid.ny = g[1];
        p.grid.nz = g[2];
      }
      if (!endpoints.empty()) p.grid.endpoints = endpoints;
      vessel::check_params(p);
      cli::RunOptions opts;
      opts.out = out ? std::filesystem::path(*out) : config.output_dir;
      opts.plot = plot;
      if (resume) opts.resume = *resume;
      const auto s = cli::run_scenario(config, opts);
      fmt::print("{} steps in {:.1f} s; emitted {}, assimilated {}, absorbed {}; {} footprint records in {}\n",
                 s.steps, s.seconds, s.ledger.emitted, s.ledger.assimilated, s.ledger.absorbed, s.footprint_records,
                 opts.out.string());
    } else if (*report) {
      cli::write_report(std::cout, dir, rows);
    } else if (*bench) {
      if (!bench_grids.empty()) {
        bench_opts.grids.clear();
        for (const auto& g : bench_grids) bench_opts.grids.push_back(cli::parse_grid(g));
      }
      const auto table = cli::bench_steps(bench_opts);
      fmt::print("{:>10} {:>10} {:>12} {:>9}\n", "grid", "objects", "ms/step", "speedup");
      for (const auto& r : table) {
        fmt::print("{:>10} {:>10} {:>12.3f} {:>9.2f}\n", fmt::format("{}x{}x{}", r.grid[0], r.grid[1], r.grid[2]),
                   r.objects, r.ms_per_step, table.front().ms_per_step / r.ms_per_step);
      }
      if (scaling) {
        for (auto domain : {cli::ScalingDomain::Vessel, cli::ScalingDomain::Cube}) {
          fmt::print("\nbroad phase, {} domain\n{:>8} {:>14} {:>14}\n",
                     domain == cli::ScalingDomain::Vessel ? "vessel" : "cube", "n", "comparisons", "/(n log2 n)");
          for (const auto& r : cli::broad_phase_scaling({1000, 10000, 100000}, domain, bench_opts.seed)) {
            fmt::print("{:>8} {:>14} {:>14.3f}\n", r.n, r.comparisons, r.per_n_log_n);
          }
        }
      }
    } else if (*worker) {
      const auto timeout = accept_ms == 0 ? std::chrono::milliseconds(std::chrono::hours(24 * 365))
                                          : std::chrono::milliseconds(accept_ms);
      cli::run_worker(listen, persist, timeout);
    }
  } catch (const Error& e) {
    spdlog::error("{}: {}", to_string(e.kind()), e.what());
    return e.kind() == ErrorKind::InvalidParameter ? 2 : 1;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
