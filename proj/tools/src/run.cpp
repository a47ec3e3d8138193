#include "vesselsim/cli/run.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "vesselsim/cli/outputs.hpp"
#include "vesselsim/collision/broad_phase.hpp"
#include "vesselsim/core/error.hpp"
#include "vesselsim/core/rng.hpp"
#include "vesselsim/gridsim/grid_set.hpp"

namespace vesselsim::cli {

namespace {

using Clock = std::chrono::steady_clock;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

std::string describe(const vessel::ScenarioParams& p) {
  if (!p.grid.endpoints.empty()) return fmt::format("{}x{}x{} over tcp", p.grid.nx, p.grid.ny, p.grid.nz);
  return fmt::format("{}x{}x{} in-process", p.grid.nx, p.grid.ny, p.grid.nz);
}

}  // namespace

std::unique_ptr<engine::PartitionSet> make_partitions(const std::shared_ptr<const vessel::Scenario>& scenario) {
  const auto& p = scenario->params();
  auto topo = engine::vessel_topology(*scenario, p.grid.nx, p.grid.ny, p.grid.nz);
  if (!p.grid.endpoints.empty()) {
    if (p.grid.endpoints.size() != topo.size()) {
      fail(ErrorKind::InvalidParameter, fmt::format("grid {}x{}x{} needs {} endpoints, got {}", p.grid.nx, p.grid.ny,
                                                    p.grid.nz, topo.size(), p.grid.endpoints.size()));
    }
    auto links = grid::tcp_endpoints(p.grid.endpoints, std::chrono::milliseconds(p.grid.timeout_ms));
    return std::make_unique<grid::GridPartitionSet>(*scenario, std::move(topo), std::move(links), p.workers);
  }
  return std::make_unique<engine::LocalPartitionSet>(scenario, std::move(topo), p.workers);
}

RunSummary run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  const auto& p = config.params;
  const auto start = Clock::now();
  std::filesystem::create_directories(options.out);
  const auto scenario = vessel::Scenario::build(p);
  engine::Simulation sim(scenario, make_partitions(scenario));
  if (options.resume) {
    sim.restore(engine::read_checkpoint(*options.resume));
    spdlog::info("resumed from {} at step {}", options.resume->string(), sim.clock());
  } else {
    sim.populate();
  }
  spdlog::info("{} objects, {} partitions ({}), {} steps", sim.objects().size(),
               sim.partitions().topology().size(), describe(p), p.steps);

  const auto steps_path = options.out / "steps.csv";
  std::ofstream steps(steps_path, std::ios::binary | std::ios::trunc);
  if (!steps) fail(ErrorKind::Io, "cannot write " + steps_path.string());
  steps << steps_header(p.thresholds) << '\n';

  const auto ckpt_dir = options.out / "checkpoints";
  if (p.checkpoint_every > 0) std::filesystem::create_directories(ckpt_dir);
  const StepIndex every = std::max<StepIndex>(1, p.output_every);
  const StepIndex progress = std::max<StepIndex>(1, p.steps / 20);
  engine::StepReport last;
  while (sim.clock() < p.steps) {
    last = sim.step();
    if (last.step % every == 0 || last.step == p.steps) steps << steps_row(last) << '\n';
    if (p.checkpoint_every > 0 && last.step % p.checkpoint_every == 0) {
      const auto path = ckpt_dir / fmt::format("step_{:09}.ckpt", last.step);
      engine::write_checkpoint(path, sim.capture());
      spdlog::debug("checkpoint {}", path.string());
    }
    if (last.step % progress == 0) {
      spdlog::info("step {}/{}: {} carriers live, {} assimilated", last.step, p.steps,
                   last.live[index_of(Kind::Carrier)], last.ledger.assimilated);
    }
  }
  steps.close();
  if (!steps) fail(ErrorKind::Io, "write failed for " + steps_path.string());

  sim.drain();
  const auto records = sim.receivers().footprint();
  write_footprint(options.out / "footprint.csv", records);
  write_text(options.out / "metadata.json", metadata(config, describe(p)).dump(2) + "\n");
  if (options.plot) {
    write_text(options.out / "activation.svg", activation_svg(read_steps(steps_path)));
    for (auto s : p.thresholds) write_text(options.out / fmt::format("footprint_s{}.svg", s), footprint_svg(records, s));
  }

  RunSummary out;
  out.steps = sim.clock();
  out.ledger = sim.ledger();
  out.activated = sim.receivers().activated();
  out.footprint_records = records.size();
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

std::vector<BenchRow> bench_steps(const BenchOptions& o) {
  vessel::ScenarioParams p;
  p.vessel_radius = 393.3e-6;
  p.vessel_length = 72e-6;
  p.lead_in = 0.0;
  p.receptors_per_cell = 1;
  p.seed_blood = false;
  p.continuous_creation = false;
  p.transmitter = false;
  p.seed = o.seed;
  p.workers = o.workers;
  p.steps = o.steps;
  const double rc = p.kind(Kind::Carrier).radius;
  RngSequence rng({o.seed, make_stream(StreamTag::Bench, 0)});
  const double rmax = p.vessel_radius - 2.0 * rc;
  const double hz = 0.5 * p.vessel_length - 2.0 * rc;
  for (std::uint64_t i = 0; i < o.objects; ++i) {
    const double r = rmax * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double z = hz * (2.0 * rng.uniform() - 1.0);
    p.probes.push_back({Kind::Carrier, Mobility::Advected, {r * std::cos(phi), r * std::sin(phi), z}, {}, 0.0});
  }

  std::vector<BenchRow> rows;
  for (const auto& g : o.grids) {
    p.grid.nx = g[0];
    p.grid.ny = g[1];
    p.grid.nz = g[2];
    const auto scenario = vessel::Scenario::build(p);
    engine::Simulation sim(scenario, make_partitions(scenario));
    sim.populate();
    sim.step();  // warm-up
    const auto t0 = Clock::now();
    for (StepIndex i = 0; i < o.steps; ++i) sim.step();
    const double ms = 1e3 * std::chrono::duration<double>(Clock::now() - t0).count() / static_cast<double>(o.steps);
    rows.push_back({g, o.objects, ms});
    spdlog::info("grid {}x{}x{}: {:.3f} ms/step", g[0], g[1], g[2], ms);
  }
  return rows;
}

std::vector<ScalingRow> broad_phase_scaling(const std::vector<std::uint64_t>& sizes, ScalingDomain domain,
                                            std::uint64_t seed) {
  constexpr double kFraction = 0.1;
  constexpr double kVesselRadius = 30.0;
  std::vector<ScalingRow> rows;
  for (auto n : sizes) {
    const double occupied = static_cast<double>(n) * 4.0 / 3.0 * std::numbers::pi;
    RngSequence rng({seed, make_stream(StreamTag::Bench, n)});
    std::vector<collision::SphereRef> spheres;
    spheres.reserve(n);
    Vec3 reference{};
    if (domain == ScalingDomain::Vessel) {
      const double length = occupied / (kFraction * std::numbers::pi * kVesselRadius * kVesselRadius);
      const double rho = kVesselRadius - 1.0;
      for (std::uint64_t i = 0; i < n; ++i) {
        const double r = rho * std::sqrt(rng.uniform());
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        spheres.push_back({i, {r * std::cos(phi), r * std::sin(phi), length * rng.uniform()}, 1.0});
      }
      reference = {0.0, 0.0, -length};
    } else {
      const double side = std::cbrt(occupied / kFraction);
      for (std::uint64_t i = 0; i < n; ++i) {
        spheres.push_back({i, {side * rng.uniform(), side * rng.uniform(), side * rng.uniform()}, 1.0});
      }
    }
    collision::BroadPhaseStats stats;
    collision::broad_phase(spheres, reference, &stats);
    const double nlogn = static_cast<double>(n) * std::log2(static_cast<double>(n));
    rows.push_back({n, stats.total(), static_cast<double>(stats.total()) / nlogn});
  }
  return rows;
}

void run_worker(const std::string& listen, bool persist, std::chrono::milliseconds accept_timeout) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) fail(ErrorKind::InvalidParameter, "listen address must be host:port");
  const auto port = std::stoul(listen.substr(colon + 1));
  if (port > 65535) fail(ErrorKind::InvalidParameter, "port out of range");
  grid::TcpListener listener(listen.substr(0, colon), static_cast<std::uint16_t>(port));
  spdlog::info("worker listening on {}:{}", listen.substr(0, colon), listener.port());
  do {
    auto link = listener.accept(accept_timeout);
    spdlog::info("coordinator connected");
    grid::serve(*link);
    spdlog::info("coordinator finished");
  } while (persist);
}

}  // namespace vesselsim::cli
