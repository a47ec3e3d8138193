#include "vesselsim/cli/outputs.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "vesselsim/core/error.hpp"

namespace vesselsim::cli {

using nlohmann::json;

std::string_view version() noexcept { return VESSELSIM_VERSION; }

std::string steps_header(const std::vector<std::uint32_t>& thresholds) {
  std::string h =
      "step,time_s,live_carrier,live_platelet,live_red_cell,live_white_cell,emitted,assimilated,absorbed,"
      "exited_carrier,exited_platelet,exited_red_cell,exited_white_cell,created";
  for (auto s : thresholds) h += fmt::format(",activated_s{}", s);
  return h;
}

std::string steps_row(const engine::StepReport& r) {
  // fmt never consults the locale unless asked to, so the output is portable.
  std::string row = fmt::format("{},{}", r.step, r.time);
  for (auto v : r.live) row += fmt::format(",{}", v);
  row += fmt::format(",{},{},{}", r.ledger.emitted, r.ledger.assimilated, r.ledger.absorbed);
  for (auto v : r.ledger.exited) row += fmt::format(",{}", v);
  row += fmt::format(",{}", r.ledger.created);
  for (auto v : r.activated) row += fmt::format(",{}", v);
  return row;
}

std::string footprint_header() { return "threshold,cell_id,phi_rad,z_um,t_activation_s,assimilated"; }

std::string footprint_row(const reception::ActivationRecord& r) {
  return fmt::format("{},{},{},{},{},{}", r.threshold, r.cell, r.phi, r.z * 1e6, r.t_activation, r.assimilated);
}

void write_footprint(const std::filesystem::path& path, const std::vector<reception::ActivationRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << footprint_header() << '\n';
  for (const auto& r : records) out << footprint_row(r) << '\n';
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

json assumptions(const vessel::ScenarioParams& p) {
  const vessel::ScenarioParams ref;
  json a = json::array();
  auto add = [&a](std::string id, std::string text) { a.push_back({{"id", std::move(id)}, {"description", std::move(text)}}); };
  add("pair_resolution_jacobi",
      "every overlapping pair is resolved from the post-wall states and the displacements are summed");
  add("wall_bounce_outward_only", "a sphere already moving away from the side wall is pushed back without a bounce");
  add("receptor_elevation_projection",
      "cube receptors are projected onto the wall along their elevation angle; points beyond the cube edge or the "
      "wall radius are dropped");
  add("activation_event_step", "activation time is (event step - emit step) dt; events fold one step later");
  add("two_body_when_approaching", "the restitution impulse is applied only to approaching pairs");
  add("brownian_stokes_einstein", "D = k_B T / (6 pi eta r) for every object");
  add("counter_rng", "Philox4x32-10 streams keyed by (seed, purpose, object)");
  add("receptor_radius", fmt::format("receptor radius {} m", p.receptor_radius));
  if (p.lead_in > 0.0) add("lead_in", fmt::format("{} m of bare wall before the first endothelial ring", p.lead_in));
  if (p.transmitter) {
    add("transmitter_offset", fmt::format("transmitter plane {} m past the first ring", p.transmitter_offset));
    add("transmitter_blockers_resampled", "cells overlapping the transmitter are moved to random free positions");
  }
  bool scaled = false;
  for (Kind k : {Kind::Platelet, Kind::RedCell, Kind::WhiteCell}) {
    scaled = scaled || p.kind(k).concentration != ref.kind(k).concentration;
  }
  if (scaled) add("scaled_concentrations", "cell concentrations differ from the reference table");
  if (p.vessel_length != ref.vessel_length) add("scaled_vessel", fmt::format("vessel length {} m", p.vessel_length));
  if (p.seed_blood) add("slab_replicated_seeding", "initial blood is packed slab by slab from one rotated pattern");
  if (p.continuous_creation) add("inlet_creation", "cells are refilled in a slab at the inlet to hold the concentration");
  if (!p.carrier_collisions) add("carrier_collisions_off", "carriers pass through cells");
  if (p.platelet_receptors) add("platelet_receptors", "platelets carry receptors and absorb carriers");
  if (!p.probes.empty()) add("probes", fmt::format("{} hand-placed objects", p.probes.size()));
  if (p.grid.enabled()) {
    add("partitioned", fmt::format("{}x{}x{} cuboid partitions, owner by center, ghost width 2 r_max", p.grid.nx,
                                   p.grid.ny, p.grid.nz));
  }
  if (!p.grid.endpoints.empty()) add("tcp_transport", "partitions served by remote workers, relayed by the coordinator");
  return a;
}

json metadata(const ScenarioConfig& config, const std::string& partitions) {
  return {{"version", std::string(version())},
          {"seed", config.params.seed},
          {"partitions", partitions},
          {"config", vessel::to_json(config.params)},
          {"assumptions", assumptions(config.params)}};
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::Io, where + ": bad number \"" + s + "\"");
  }
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "missing " + path.string());
  return in;
}

}  // namespace

StepsTable read_steps(const std::filesystem::path& path) {
  auto in = open(path);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::Io, path.string() + ": empty file");
  const auto header = split(line);
  StepsTable t;
  std::vector<std::size_t> cols;
  std::size_t time_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "time_s") time_col = i;
    if (header[i].rfind("activated_s", 0) == 0) {
      t.thresholds.push_back(static_cast<std::uint32_t>(std::stoul(header[i].substr(11))));
      cols.push_back(i);
    }
  }
  if (time_col == header.size()) fail(ErrorKind::Io, path.string() + ": no time_s column");
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = split(line);
    const auto where = path.string() + ":" + std::to_string(row);
    if (cells.size() != header.size()) fail(ErrorKind::Io, where + ": expected " + std::to_string(header.size()) + " columns");
    t.time.push_back(to_double(cells[time_col], where));
    std::vector<std::uint64_t> a;
    for (auto c : cols) a.push_back(static_cast<std::uint64_t>(to_double(cells[c], where)));
    t.activated.push_back(std::move(a));
  }
  return t;
}

std::vector<reception::ActivationRecord> read_footprint(const std::filesystem::path& path) {
  auto in = open(path);
  std::string line;
  if (!std::getline(in, line) || line != footprint_header()) fail(ErrorKind::Io, path.string() + ": unexpected header");
  std::vector<reception::ActivationRecord> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto c = split(line);
    const auto where = path.string() + ":" + std::to_string(row);
    if (c.size() != 6) fail(ErrorKind::Io, where + ": expected 6 columns");
    reception::ActivationRecord r;
    r.threshold = static_cast<std::uint32_t>(to_double(c[0], where));
    r.cell = static_cast<std::uint32_t>(to_double(c[1], where));
    r.phi = to_double(c[2], where);
    r.z = to_double(c[3], where) * 1e-6;
    r.t_activation = to_double(c[4], where);
    r.assimilated = static_cast<std::uint64_t>(to_double(c[5], where));
    out.push_back(r);
  }
  return out;
}

std::vector<Extent> footprint_extents(const std::vector<reception::ActivationRecord>& records) {
  std::map<std::uint32_t, Extent> by;
  for (const auto& r : records) {
    auto [it, fresh] = by.try_emplace(r.threshold);
    auto& e = it->second;
    const double z = r.z * 1e6;
    if (fresh) {
      e = {r.threshold, 0, r.phi, r.phi, z, z, r.t_activation, r.t_activation};
    }
    ++e.cells;
    e.phi_min = std::min(e.phi_min, r.phi);
    e.phi_max = std::max(e.phi_max, r.phi);
    e.z_min = std::min(e.z_min, z);
    e.z_max = std::max(e.z_max, z);
    e.t_min = std::min(e.t_min, r.t_activation);
    e.t_max = std::max(e.t_max, r.t_activation);
  }
  std::vector<Extent> out;
  for (auto& [s, e] : by) out.push_back(e);
  return out;
}

void write_report(std::ostream& out, const std::filesystem::path& dir, std::size_t rows) {
  const auto steps = read_steps(dir / "steps.csv");
  const auto records = read_footprint(dir / "footprint.csv");

  fmt::print(out, "Activated cells against time since the start of the run\n");
  fmt::print(out, "{:>12}", "time_s");
  for (auto s : steps.thresholds) fmt::print(out, " {:>8}", fmt::format("S={}", s));
  fmt::print(out, "\n");
  const std::size_t n = steps.time.size();
  if (n > 0) {
    const std::size_t shown = std::min(rows, n);
    for (std::size_t k = 0; k < shown; ++k) {
      const std::size_t i = shown == 1 ? n - 1 : k * (n - 1) / (shown - 1);
      fmt::print(out, "{:>12.6f}", steps.time[i]);
      for (auto v : steps.activated[i]) fmt::print(out, " {:>8}", v);
      fmt::print(out, "\n");
    }
  }
  for (std::size_t k = 0; k < steps.thresholds.size(); ++k) {
    bool monotone = true;
    for (std::size_t i = 1; i < n; ++i) monotone = monotone && steps.activated[i][k] >= steps.activated[i - 1][k];
    if (!monotone) fmt::print(out, "warning: activated count for S={} decreases\n", steps.thresholds[k]);
  }

  fmt::print(out, "\nFootprint extent\n");
  const auto extents = footprint_extents(records);
  if (extents.empty()) {
    fmt::print(out, "no activations\n");
    return;
  }
  fmt::print(out, "{:>6} {:>6} {:>22} {:>24} {:>24}\n", "S", "cells", "phi_rad", "z_um", "t_activation_s");
  for (const auto& e : extents) {
    fmt::print(out, "{:>6} {:>6} {:>22} {:>24} {:>24}\n", e.threshold, e.cells,
               fmt::format("[{:.3f}, {:.3f}]", e.phi_min, e.phi_max), fmt::format("[{:.1f}, {:.1f}]", e.z_min, e.z_max),
               fmt::format("[{:.6f}, {:.6f}]", e.t_min, e.t_max));
  }
}

namespace {

constexpr double kWidth = 640, kHeight = 400, kLeft = 70, kRight = 20, kTop = 30, kBottom = 50;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string svg_open(const std::string& title) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"18\" text-anchor=\"middle\">{3}</text>\n",
      kWidth, kHeight, kWidth / 2, title);
}

std::string axes(double x0, double x1, double y0, double y1, const std::string& xl, const std::string& yl) {
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  std::string s = fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                              kLeft, kTop, pw, ph);
  for (int i = 0; i <= 4; ++i) {
    const double fx = kLeft + pw * i / 4, fy = kTop + ph * (4 - i) / 4;
    s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.3g}</text>\n", fx, kHeight - kBottom + 16,
                     x0 + (x1 - x0) * i / 4);
    s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>\n", kLeft - 6, fy + 4,
                     y0 + (y1 - y0) * i / 4);
  }
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", kLeft + pw / 2, kHeight - 12, xl);
  s += fmt::format("<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
                   kTop + ph / 2, kTop + ph / 2, yl);
  return s;
}

}  // namespace

std::string activation_svg(const StepsTable& steps) {
  std::string s = svg_open("Activated receivers");
  const double t0 = steps.time.empty() ? 0.0 : steps.time.front();
  const double t1 = steps.time.empty() ? 1.0 : std::max(steps.time.back(), t0 + 1e-12);
  std::uint64_t ymax = 1;
  for (const auto& row : steps.activated) {
    for (auto v : row) ymax = std::max(ymax, v);
  }
  s += axes(t0, t1, 0.0, static_cast<double>(ymax), "time (s)", "activated cells");
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  for (std::size_t k = 0; k < steps.thresholds.size(); ++k) {
    std::string pts;
    for (std::size_t i = 0; i < steps.time.size(); ++i) {
      const double x = kLeft + pw * (steps.time[i] - t0) / (t1 - t0);
      const double y = kTop + ph * (1.0 - static_cast<double>(steps.activated[i][k]) / static_cast<double>(ymax));
      pts += fmt::format("{:.2f},{:.2f} ", x, y);
    }
    const char* color = kPalette[k % std::size(kPalette)];
    s += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, pts);
    s += fmt::format("<text x=\"{}\" y=\"{}\" fill=\"{}\">S={}</text>\n", kLeft + 10, kTop + 16 + 14 * k, color,
                     steps.thresholds[k]);
  }
  return s + "</svg>\n";
}

std::string footprint_svg(const std::vector<reception::ActivationRecord>& records, std::uint32_t threshold) {
  std::string s = svg_open(fmt::format("Footprint, S={}", threshold));
  double zmin = 0.0, zmax = 1.0, tmax = 0.0;
  bool first = true;
  for (const auto& r : records) {
    if (r.threshold != threshold) continue;
    const double z = r.z * 1e6;
    zmin = first ? z : std::min(zmin, z);
    zmax = first ? z : std::max(zmax, z);
    tmax = std::max(tmax, r.t_activation);
    first = false;
  }
  if (zmax - zmin < 1.0) {
    zmin -= 10.0;
    zmax += 10.0;
  }
  s += axes(-3.1416, 3.1416, zmin, zmax, "phi (rad)", "z (um)");
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  for (const auto& r : records) {
    if (r.threshold != threshold) continue;
    const double x = kLeft + pw * (r.phi + 3.1416) / (2 * 3.1416);
    const double y = kTop + ph * (1.0 - (r.z * 1e6 - zmin) / (zmax - zmin));
    // Early activations dark, late ones light.
    const int shade = tmax > 0.0 ? static_cast<int>(200.0 * r.t_activation / tmax) : 0;
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"rgb({},{},255)\"/>\n", x, y, shade, shade);
  }
  return s + "</svg>\n";
}

}  // namespace vesselsim::cli
