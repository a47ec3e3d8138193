#include "vesselsim/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <regex>

#include "vesselsim/core/error.hpp"
#include "vesselsim/vessel/endothelium.hpp"

namespace vesselsim::cli {

using nlohmann::json;

namespace {

enum class Dim { Length, Velocity, Time, Concentration, Viscosity, Temperature, Density };

const char* name(Dim d) {
  switch (d) {
    case Dim::Length: return "length";
    case Dim::Velocity: return "velocity";
    case Dim::Time: return "time";
    case Dim::Concentration: return "concentration";
    case Dim::Viscosity: return "viscosity";
    case Dim::Temperature: return "temperature";
    case Dim::Density: return "density";
  }
  return "?";
}

// Every factor is a power of ten, kept as its exponent so conversion is a
// single correctly rounded decimal parse ("1.75 nm" gives exactly 1.75e-9).
struct Unit {
  Dim dim;
  int exponent;
};

const std::map<std::string, Unit>& unit_table() {
  static const std::map<std::string, Unit> t{
      {"m", {Dim::Length, 0}},           {"mm", {Dim::Length, -3}},
      {"um", {Dim::Length, -6}},         {"µm", {Dim::Length, -6}},
      {"μm", {Dim::Length, -6}},         {"nm", {Dim::Length, -9}},
      {"m/s", {Dim::Velocity, 0}},       {"mm/s", {Dim::Velocity, -3}},
      {"um/s", {Dim::Velocity, -6}},     {"s", {Dim::Time, 0}},
      {"ms", {Dim::Time, -3}},           {"us", {Dim::Time, -6}},
      {"µs", {Dim::Time, -6}},           {"μs", {Dim::Time, -6}},
      {"/m3", {Dim::Concentration, 0}},  {"/mm3", {Dim::Concentration, 9}},
      {"mm^-3", {Dim::Concentration, 9}}, {"/uL", {Dim::Concentration, 9}},
      {"Pa*s", {Dim::Viscosity, 0}},     {"Pa.s", {Dim::Viscosity, 0}},
      {"mPa*s", {Dim::Viscosity, -3}},   {"cP", {Dim::Viscosity, -3}},
      {"K", {Dim::Temperature, 0}},      {"kg/m3", {Dim::Density, 0}},
      {"g/cm3", {Dim::Density, 3}},
  };
  return t;
}

const std::map<std::string, Dim>& top_dims() {
  static const std::map<std::string, Dim> t{
      {"vessel_radius", Dim::Length},         {"vessel_length", Dim::Length},
      {"mean_flow_velocity", Dim::Velocity},  {"viscosity", Dim::Viscosity},
      {"temperature", Dim::Temperature},      {"cell_side", Dim::Length},
      {"receptor_radius", Dim::Length},       {"lead_in", Dim::Length},
      {"creation_slab", Dim::Length},         {"white_receptor_radius", Dim::Length},
      {"platelet_receptor_radius", Dim::Length}, {"transmitter_offset", Dim::Length},
      {"dt", Dim::Time},
  };
  return t;
}

const std::map<std::string, Dim>& kind_dims() {
  static const std::map<std::string, Dim> t{
      {"concentration", Dim::Concentration}, {"radius", Dim::Length}, {"density", Dim::Density}};
  return t;
}

const std::map<std::string, Dim>& probe_dims() {
  static const std::map<std::string, Dim> t{
      {"center", Dim::Length}, {"velocity", Dim::Velocity}, {"radius", Dim::Length}};
  return t;
}

std::optional<double> quantity(const json& v, Dim dim, const std::string& path, std::vector<std::string>& errors) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) {
    errors.push_back(path + ": expected a number or a quantity string");
    return std::nullopt;
  }
  static const std::regex re(R"(^\s*([-+]?(?:\d+\.?\d*|\.\d+))(?:[eE]([-+]?\d+))?\s*(\S*)\s*$)");
  const auto text = v.get<std::string>();
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    errors.push_back(path + ": cannot read quantity \"" + text + "\"");
    return std::nullopt;
  }
  int exponent = m[2].matched ? std::stoi(m[2].str()) : 0;
  if (m[3].length() > 0) {
    const auto it = unit_table().find(m[3].str());
    if (it == unit_table().end()) {
      errors.push_back(path + ": unknown unit \"" + m[3].str() + "\"");
      return std::nullopt;
    }
    if (it->second.dim != dim) {
      errors.push_back(path + ": \"" + m[3].str() + "\" is not a " + name(dim) + " unit");
      return std::nullopt;
    }
    exponent += it->second.exponent;
  }
  return std::stod(m[1].str() + "e" + std::to_string(exponent));
}

void convert(json& v, Dim dim, const std::string& path, std::vector<std::string>& errors) {
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) convert(v[i], dim, path + "[" + std::to_string(i) + "]", errors);
    return;
  }
  if (const auto q = quantity(v, dim, path, errors)) v = *q;
}

void convert_fields(json& obj, const std::map<std::string, Dim>& dims, const std::string& path,
                    std::vector<std::string>& errors) {
  if (!obj.is_object()) return;
  for (auto& [key, value] : obj.items()) {
    if (const auto it = dims.find(key); it != dims.end()) convert(value, it->second, path + "." + key, errors);
  }
}

}  // namespace

json resolve_units(const json& config) {
  if (!config.is_object()) fail(ErrorKind::InvalidParameter, "config: expected a JSON object");
  json out = config;
  std::vector<std::string> errors;
  convert_fields(out, top_dims(), "config", errors);
  if (out.contains("kinds") && out["kinds"].is_object()) {
    for (auto& [kind, fields] : out["kinds"].items()) convert_fields(fields, kind_dims(), "config.kinds." + kind, errors);
  }
  if (out.contains("probes") && out["probes"].is_array()) {
    for (std::size_t i = 0; i < out["probes"].size(); ++i) {
      convert_fields(out["probes"][i], probe_dims(), "config.probes[" + std::to_string(i) + "]", errors);
    }
  }
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    fail(ErrorKind::InvalidParameter, msg);
  }
  return out;
}

ScenarioConfig parse_config(const json& config) {
  json resolved = resolve_units(config);
  ScenarioConfig out;
  if (resolved.contains("output_dir")) {
    if (!resolved["output_dir"].is_string()) fail(ErrorKind::InvalidParameter, "config.output_dir: expected a string");
    out.output_dir = resolved["output_dir"].get<std::string>();
    resolved.erase("output_dir");
  }
  // Start from the defaults so a config only lists what it changes.
  json full = vessel::to_json(vessel::ScenarioParams{});
  for (auto& [key, value] : resolved.items()) {
    if (key == "kinds" && value.is_object() && full.contains("kinds")) {
      for (auto& [kind, fields] : value.items()) {
        if (fields.is_object() && full["kinds"].contains(kind)) {
          full["kinds"][kind].update(fields);
        } else {
          full["kinds"][kind] = fields;
        }
      }
    } else if (key == "grid" && value.is_object()) {
      full["grid"].update(value);
    } else {
      full[key] = value;
    }
  }
  out.params = vessel::params_from_json(full);
  derive(out.params);
  return out;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidParameter, path.string() + ": " + e.what());
  }
  return parse_config(j);
}

Derived derive(const vessel::ScenarioParams& p) {
  Derived d;
  d.ring_ratio = 2.0 * std::numbers::pi * p.vessel_radius / p.cell_side;
  if (!(d.ring_ratio >= kMinRingRatio)) {
    fail(ErrorKind::InvalidParameter, "2 pi R / d_h = " + std::to_string(d.ring_ratio) + " is below " +
                                          std::to_string(kMinRingRatio) + ": the endothelial tiling is degenerate");
  }
  const auto plan = vessel::plan_endothelium(p.vessel_radius, p.cell_side);
  d.cells_per_ring = plan.cells_per_ring;
  d.cell_width = plan.side;
  d.apothem = plan.apothem;
  d.center_distance = plan.center_distance;
  const double wall = p.vessel_length - p.lead_in;
  d.rings = wall > 0.0 ? static_cast<std::uint32_t>(std::floor(wall / plan.side)) : 0;
  d.volume = std::numbers::pi * p.vessel_radius * p.vessel_radius * p.vessel_length;
  for (Kind k : kAllKinds) d.expected[index_of(k)] = p.kind(k).concentration * d.volume;
  const double rr = p.kind(Kind::RedCell).radius;
  d.red_volume_fraction = p.kind(Kind::RedCell).concentration * 4.0 / 3.0 * std::numbers::pi * rr * rr * rr;
  return d;
}

std::array<std::uint32_t, 3> parse_grid(const std::string& text) {
  static const std::regex re(R"(^(\d+)x(\d+)x(\d+)$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) fail(ErrorKind::InvalidParameter, "grid must look like 2x2x1, got " + text);
  std::array<std::uint32_t, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const auto v = std::stoul(m[i + 1].str());
    if (v == 0 || v > 64) fail(ErrorKind::InvalidParameter, "grid counts must lie in 1..64");
    out[i] = static_cast<std::uint32_t>(v);
  }
  return out;
}

}  // namespace vesselsim::cli
