#include "vesselsim/vessel/params.hpp"

#include <cmath>
#include <set>

#include "vesselsim/core/error.hpp"

namespace vesselsim::vessel {

using nlohmann::json;

namespace {

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

// Reads fields from an object and remembers which keys were consumed, so that
// leftovers can be reported.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(ErrorKind::InvalidParameter, path_ + ": expected an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    used_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      fail(ErrorKind::InvalidParameter, path_ + "." + key + ": " + e.what());
    }
  }

  void get_vec(const char* key, Vec3& out) {
    std::vector<double> v;
    get(key, v);
    if (j_.contains(key)) {
      if (v.size() != 3) fail(ErrorKind::InvalidParameter, path_ + "." + key + ": expected 3 numbers");
      out = {v[0], v[1], v[2]};
    }
  }

  const json* child(const char* key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.contains(it.key())) fail(ErrorKind::InvalidParameter, path_ + "." + it.key() + ": unknown key");
    }
  }

  const std::string& path() const { return path_; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

}  // namespace

json to_json(const ScenarioParams& p) {
  json kinds = json::object();
  for (Kind k : kAllKinds) {
    const auto& kp = p.kind(k);
    kinds[std::string(to_string(k))] = {
        {"concentration", kp.concentration}, {"radius", kp.radius}, {"density", kp.density}};
  }
  json probes = json::array();
  for (const auto& pr : p.probes) {
    probes.push_back({{"kind", to_string(pr.kind)},
                      {"mobility", to_string(pr.mobility)},
                      {"center", vec_to_json(pr.center)},
                      {"velocity", vec_to_json(pr.velocity)},
                      {"radius", pr.radius}});
  }
  return {
      {"vessel_radius", p.vessel_radius},
      {"vessel_length", p.vessel_length},
      {"mean_flow_velocity", p.mean_flow_velocity},
      {"viscosity", p.viscosity},
      {"temperature", p.temperature},
      {"wall_restitution", p.wall_restitution},
      {"cell_side", p.cell_side},
      {"receptors_per_cell", p.receptors_per_cell},
      {"receptor_radius", p.receptor_radius},
      {"lead_in", p.lead_in},
      {"kinds", kinds},
      {"creation_slab", p.creation_slab},
      {"cell_restitution", p.cell_restitution},
      {"white_receptors", p.white_receptors},
      {"white_receptor_radius", p.white_receptor_radius},
      {"platelet_receptors", p.platelet_receptors},
      {"platelet_receptor_count", p.platelet_receptor_count},
      {"platelet_receptor_radius", p.platelet_receptor_radius},
      {"carrier_collisions", p.carrier_collisions},
      {"seed_blood", p.seed_blood},
      {"continuous_creation", p.continuous_creation},
      {"transmitter", p.transmitter},
      {"position_index", p.position_index},
      {"transmitter_offset", p.transmitter_offset},
      {"burst_size", p.burst_size},
      {"emit_step", p.emit_step},
      {"steps", p.steps},
      {"dt", p.dt},
      {"seed", p.seed},
      {"workers", p.workers},
      {"fanout", p.fanout},
      {"checkpoint_every", p.checkpoint_every},
      {"output_every", p.output_every},
      {"thresholds", p.thresholds},
      {"grid",
       {{"nx", p.grid.nx},
        {"ny", p.grid.ny},
        {"nz", p.grid.nz},
        {"endpoints", p.grid.endpoints},
        {"timeout_ms", p.grid.timeout_ms}}},
      {"probes", probes},
  };
}

ScenarioParams params_from_json(const json& j) {
  ScenarioParams p;
  Reader r(j, "params");
  r.get("vessel_radius", p.vessel_radius);
  r.get("vessel_length", p.vessel_length);
  r.get("mean_flow_velocity", p.mean_flow_velocity);
  r.get("viscosity", p.viscosity);
  r.get("temperature", p.temperature);
  r.get("wall_restitution", p.wall_restitution);
  r.get("cell_side", p.cell_side);
  r.get("receptors_per_cell", p.receptors_per_cell);
  r.get("receptor_radius", p.receptor_radius);
  r.get("lead_in", p.lead_in);
  if (const json* kinds = r.child("kinds")) {
    Reader kr(*kinds, "params.kinds");
    for (Kind k : kAllKinds) {
      const std::string name(to_string(k));
      if (const json* kj = kr.child(name.c_str())) {
        Reader one(*kj, "params.kinds." + name);
        auto& kp = p.kind(k);
        one.get("concentration", kp.concentration);
        one.get("radius", kp.radius);
        one.get("density", kp.density);
        one.finish();
      }
    }
    kr.finish();
  }
  r.get("creation_slab", p.creation_slab);
  r.get("cell_restitution", p.cell_restitution);
  r.get("white_receptors", p.white_receptors);
  r.get("white_receptor_radius", p.white_receptor_radius);
  r.get("platelet_receptors", p.platelet_receptors);
  r.get("platelet_receptor_count", p.platelet_receptor_count);
  r.get("platelet_receptor_radius", p.platelet_receptor_radius);
  r.get("carrier_collisions", p.carrier_collisions);
  r.get("seed_blood", p.seed_blood);
  r.get("continuous_creation", p.continuous_creation);
  r.get("transmitter", p.transmitter);
  r.get("position_index", p.position_index);
  r.get("transmitter_offset", p.transmitter_offset);
  r.get("burst_size", p.burst_size);
  r.get("emit_step", p.emit_step);
  r.get("steps", p.steps);
  r.get("dt", p.dt);
  r.get("seed", p.seed);
  r.get("workers", p.workers);
  r.get("fanout", p.fanout);
  r.get("checkpoint_every", p.checkpoint_every);
  r.get("output_every", p.output_every);
  r.get("thresholds", p.thresholds);
  if (const json* g = r.child("grid")) {
    Reader gr(*g, "params.grid");
    gr.get("nx", p.grid.nx);
    gr.get("ny", p.grid.ny);
    gr.get("nz", p.grid.nz);
    gr.get("endpoints", p.grid.endpoints);
    gr.get("timeout_ms", p.grid.timeout_ms);
    gr.finish();
  }
  if (const json* probes = r.child("probes")) {
    if (!probes->is_array()) fail(ErrorKind::InvalidParameter, "params.probes: expected an array");
    for (std::size_t i = 0; i < probes->size(); ++i) {
      const std::string path = "params.probes[" + std::to_string(i) + "]";
      Reader pr(probes->at(i), path);
      ProbeSpec spec;
      std::string kind = std::string(to_string(spec.kind));
      std::string mobility = std::string(to_string(spec.mobility));
      pr.get("kind", kind);
      pr.get("mobility", mobility);
      pr.get_vec("center", spec.center);
      pr.get_vec("velocity", spec.velocity);
      pr.get("radius", spec.radius);
      pr.finish();
      const auto k = kind_from_string(kind);
      if (!k) fail(ErrorKind::InvalidParameter, path + ".kind: unknown kind '" + kind + "'");
      const auto m = mobility_from_string(mobility);
      if (!m) fail(ErrorKind::InvalidParameter, path + ".mobility: unknown mobility '" + mobility + "'");
      spec.kind = *k;
      spec.mobility = *m;
      p.probes.push_back(spec);
    }
  }
  r.finish();
  check_params(p);
  return p;
}

void check_params(const ScenarioParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorKind::InvalidParameter, std::string(name) + " must be positive");
  };
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      fail(ErrorKind::InvalidParameter, std::string(name) + " must be non-negative");
    }
  };
  auto unit_interval = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) fail(ErrorKind::InvalidParameter, std::string(name) + " must lie in [0, 1]");
  };
  positive(p.vessel_radius, "vessel radius");
  positive(p.vessel_length, "vessel length");
  non_negative(p.mean_flow_velocity, "mean flow velocity");
  positive(p.viscosity, "viscosity");
  positive(p.temperature, "temperature");
  unit_interval(p.wall_restitution, "wall restitution");
  unit_interval(p.cell_restitution, "cell restitution");
  positive(p.cell_side, "endothelial cell side");
  positive(p.receptor_radius, "receptor radius");
  non_negative(p.lead_in, "lead-in length");
  if (p.lead_in >= p.vessel_length) fail(ErrorKind::InvalidParameter, "lead-in must be shorter than the vessel");
  for (Kind k : kAllKinds) {
    const auto& kp = p.kind(k);
    const std::string name(to_string(k));
    non_negative(kp.concentration, (name + " concentration").c_str());
    positive(kp.radius, (name + " radius").c_str());
    positive(kp.density, (name + " density").c_str());
    if (kp.radius >= p.vessel_radius) fail(ErrorKind::InvalidParameter, name + " radius must be below the vessel radius");
  }
  positive(p.creation_slab, "creation slab thickness");
  positive(p.white_receptor_radius, "white cell receptor radius");
  positive(p.platelet_receptor_radius, "platelet receptor radius");
  if (p.position_index > 5) fail(ErrorKind::InvalidParameter, "transmitter position index must be 0..5");
  non_negative(p.transmitter_offset, "transmitter offset");
  if (p.transmitter && p.lead_in + p.transmitter_offset >= p.vessel_length) {
    fail(ErrorKind::InvalidParameter, "transmitter plane lies beyond the vessel outlet");
  }
  if (p.steps == 0) fail(ErrorKind::InvalidParameter, "steps must be positive");
  positive(p.dt, "time step");
  if (p.workers == 0) fail(ErrorKind::InvalidParameter, "workers must be at least 1");
  if (p.fanout == 0) fail(ErrorKind::InvalidParameter, "fanout must be at least 1");
  if (p.output_every == 0) fail(ErrorKind::InvalidParameter, "output cadence must be at least 1");
  if (p.thresholds.empty()) fail(ErrorKind::InvalidParameter, "at least one threshold is required");
  for (auto s : p.thresholds) {
    if (s == 0) fail(ErrorKind::InvalidParameter, "thresholds must be at least 1");
  }
  if (p.grid.nx == 0 || p.grid.ny == 0 || p.grid.nz == 0) {
    fail(ErrorKind::InvalidParameter, "grid dimensions must be at least 1");
  }
  if (!p.grid.endpoints.empty() && p.grid.endpoints.size() != std::size_t{p.grid.nx} * p.grid.ny * p.grid.nz) {
    fail(ErrorKind::InvalidParameter, "grid endpoints must list one address per partition");
  }
  for (const auto& pr : p.probes) {
    if (!is_finite(pr.center) || !is_finite(pr.velocity)) fail(ErrorKind::InvalidParameter, "probe state must be finite");
    non_negative(pr.radius, "probe radius");
  }
}

}  // namespace vesselsim::vessel
