#include <clocale>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "vesselsim/cli/config.hpp"
#include "vesselsim/cli/outputs.hpp"
#include "vesselsim/core/error.hpp"

using namespace vesselsim;
using namespace vesselsim::cli;
using doctest::Approx;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("vesselsim_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("an empty config gives the reference parameters") {
  const auto c = parse_config(json::object());
  CHECK(c.params == vessel::ScenarioParams{});
  CHECK(c.output_dir == "out");
}

TEST_CASE("the shipped reference config matches the defaults") {
  const auto c = load_config(std::filesystem::path(VESSELSIM_SOURCE_DIR) / "configs" / "reference.json");
  auto p = c.params;
  CHECK(p == vessel::ScenarioParams{});
}

TEST_CASE("quantities are converted to SI") {
  const auto c = parse_config(json::parse(R"({
    "vessel_radius": "25 um", "vessel_length": "0.5 mm", "mean_flow_velocity": "0.4 mm/s",
    "viscosity": "1.2 cP", "dt": "2 us", "transmitter": false, "receptor_radius": "3 nm", "temperature": 300,
    "kinds": {"red_cell": {"concentration": "4e5 /uL", "radius": "3 um", "density": "1.1 g/cm3"}},
    "probes": [{"kind": "platelet", "mobility": "ballistic", "center": ["1 um", 0, "-2 um"],
                "velocity": ["1 mm/s", 0, 0], "radius": 0}],
    "output_dir": "somewhere"})"));
  const auto& p = c.params;
  CHECK(p.vessel_radius == Approx(25e-6));
  CHECK(p.vessel_length == Approx(0.5e-3));
  CHECK(p.mean_flow_velocity == Approx(0.4e-3));
  CHECK(p.viscosity == Approx(1.2e-3));
  CHECK(p.dt == Approx(2e-6));
  CHECK(p.receptor_radius == Approx(3e-9));
  CHECK(p.temperature == 300.0);
  CHECK(p.kind(Kind::RedCell).concentration == Approx(4e14));
  CHECK(p.kind(Kind::RedCell).radius == Approx(3e-6));
  CHECK(p.kind(Kind::RedCell).density == Approx(1100.0));
  // Untouched kinds keep their defaults.
  CHECK(p.kind(Kind::Platelet) == vessel::ScenarioParams{}.kind(Kind::Platelet));
  REQUIRE(p.probes.size() == 1);
  CHECK(p.probes[0].center.z == Approx(-2e-6));
  CHECK(p.probes[0].velocity.x == Approx(1e-3));
  CHECK(c.output_dir == "somewhere");
}

TEST_CASE("configuration errors name their paths") {
  CHECK_THROWS_WITH_AS(parse_config(json::parse(R"({"vessel_radiu": 1})")), doctest::Contains("vessel_radiu"), Error);
  CHECK_THROWS_WITH_AS(parse_config(json::parse(R"({"kinds": {"red_cell": {"colour": 1}}})")),
                       doctest::Contains("colour"), Error);
  try {
    parse_config(json::parse(R"({"vessel_radius": "30 s", "dt": "5 fortnights", "cell_side": "x um"})"));
    FAIL("accepted");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("config.vessel_radius") != std::string::npos);
    CHECK(msg.find("config.dt") != std::string::npos);
    CHECK(msg.find("config.cell_side") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(json::array()), Error);
}

TEST_CASE("degenerate endothelial tiling is rejected") {
  CHECK_THROWS_WITH_AS(parse_config(json::parse(R"({"vessel_radius": "30 um", "cell_side": "40 um"})")),
                       doctest::Contains("degenerate"), Error);
}

TEST_CASE("derived quantities for the reference vessel") {
  const auto d = derive(vessel::ScenarioParams{});
  CHECK(d.cells_per_ring == 13);
  CHECK(d.cell_width * 1e6 == Approx(14.4997).epsilon(1e-5));
  CHECK(std::abs(d.apothem * 1e6 - 29.13) <= 0.01);
  CHECK(std::abs(d.center_distance * 1e6 - 36.38) <= 0.01);
  CHECK(d.rings == 151);
  CHECK(d.red_volume_fraction == Approx(0.7184).epsilon(1e-3));
  CHECK(d.expected[index_of(Kind::RedCell)] == Approx(4e15 * 7.35133e-12).epsilon(1e-5));
}

TEST_CASE("grid layouts") {
  CHECK(parse_grid("2x2x1") == std::array<std::uint32_t, 3>{2, 2, 1});
  CHECK(parse_grid("3x1x4") == std::array<std::uint32_t, 3>{3, 1, 4});
  CHECK_THROWS_AS(parse_grid("2x2"), Error);
  CHECK_THROWS_AS(parse_grid("0x1x1"), Error);
  CHECK_THROWS_AS(parse_grid("2X2X1"), Error);
}

TEST_CASE("step rows are locale independent") {
  // A comma-decimal C locale must not leak into the output.
  const char* saved = std::setlocale(LC_NUMERIC, nullptr);
  const std::string restore = saved ? saved : "C";
  std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
  engine::StepReport r;
  r.step = 12;
  r.time = 6e-05;
  r.live = {3, 4, 5, 6};
  r.ledger.emitted = 10;
  r.ledger.assimilated = 2;
  r.ledger.absorbed = 1;
  r.ledger.exited = {4, 0, 1, 0};
  r.ledger.created = 7;
  r.activated = {2, 1, 0, 0};
  CHECK(steps_row(r) == "12,6e-05,3,4,5,6,10,2,1,4,0,1,0,7,2,1,0,0");
  std::setlocale(LC_NUMERIC, restore.c_str());
  CHECK(steps_header({1, 2, 5, 10}).ends_with(",created,activated_s1,activated_s2,activated_s5,activated_s10"));
}

TEST_CASE("footprint files round trip") {
  const auto dir = scratch("footprint");
  const std::vector<reception::ActivationRecord> recs{{2, 40, -0.25, 12.5e-6, 0.125, 3}, {2, 41, 0.5, -3e-6, 0.5, 2},
                                                      {10, 40, -0.25, 12.5e-6, 0.75, 10}};
  write_footprint(dir / "footprint.csv", recs);
  const auto back = read_footprint(dir / "footprint.csv");
  REQUIRE(back.size() == 3);
  CHECK(back[1].cell == 41);
  CHECK(back[1].phi == 0.5);
  CHECK(back[1].z == Approx(-3e-6));
  CHECK(back[2].assimilated == 10);

  const auto ext = footprint_extents(back);
  REQUIRE(ext.size() == 2);
  CHECK(ext[0].threshold == 2);
  CHECK(ext[0].cells == 2);
  CHECK(ext[0].phi_min == -0.25);
  CHECK(ext[0].phi_max == 0.5);
  CHECK(ext[0].z_min == Approx(-3.0));
  CHECK(ext[0].t_max == 0.5);
  CHECK(footprint_svg(back, 2).starts_with("<svg"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("report on a run without activations") {
  const auto dir = scratch("report");
  {
    std::ofstream s(dir / "steps.csv");
    s << steps_header({1, 2}) << '\n';
    s << "1,5e-06,0,1,2,0,0,0,0,0,0,0,0,0,0,0\n";
    s << "2,1e-05,0,1,2,0,0,0,0,0,0,0,0,0,0,0\n";
  }
  write_footprint(dir / "footprint.csv", {});
  std::ostringstream out;
  write_report(out, dir);
  CHECK(out.str().find("no activations") != std::string::npos);
  const auto steps = read_steps(dir / "steps.csv");
  CHECK(steps.thresholds == std::vector<std::uint32_t>{1, 2});
  CHECK(steps.time.size() == 2);
  CHECK(activation_svg(steps).starts_with("<svg"));

  std::ofstream(dir / "steps.csv", std::ios::app) << "3,1.5e-05,0,1\n";
  CHECK_THROWS_AS(read_steps(dir / "steps.csv"), Error);
  std::filesystem::remove(dir / "footprint.csv");
  std::ostringstream again;
  CHECK_THROWS_AS(write_report(again, dir), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("metadata lists the active assumptions") {
  ScenarioConfig c;
  c.params.grid.nx = 2;
  const auto m = metadata(c, "2x1x1 in-process");
  CHECK(m["version"] == std::string(version()));
  CHECK(m["seed"] == 1);
  CHECK(vessel::params_from_json(m["config"]) == c.params);
  std::vector<std::string> ids;
  for (const auto& a : m["assumptions"]) ids.push_back(a["id"]);
  CHECK(std::find(ids.begin(), ids.end(), "partitioned") != ids.end());
  CHECK(std::find(ids.begin(), ids.end(), "lead_in") != ids.end());
  CHECK(std::find(ids.begin(), ids.end(), "scaled_concentrations") == ids.end());
}
