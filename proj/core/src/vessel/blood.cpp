#include "vesselsim/vessel/blood.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vesselsim/core/error.hpp"
#include "vesselsim/core/rng.hpp"

namespace vesselsim::vessel {

Occupancy::Occupancy(double cell_size) : cell_(cell_size) {
  if (!(cell_size > 0.0)) fail(ErrorKind::InvalidParameter, "occupancy cell size must be positive");
}

std::int64_t Occupancy::coord(double v) const noexcept { return static_cast<std::int64_t>(std::floor(v / cell_)); }

std::uint64_t Occupancy::key(std::int64_t i, std::int64_t j, std::int64_t k) noexcept {
  const auto u = [](std::int64_t v) { return static_cast<std::uint64_t>(v) & 0x1f'ffffULL; };
  return (u(i) << 42) | (u(j) << 21) | u(k);
}

void Occupancy::add(const Vec3& center, double radius) {
  const auto idx = static_cast<std::uint32_t>(spheres_.size());
  spheres_.push_back({center, radius});
  max_radius_ = std::max(max_radius_, radius);
  buckets_[key(coord(center.x), coord(center.y), coord(center.z))].push_back(idx);
}

bool Occupancy::overlaps(const Vec3& center, double radius) const {
  const double reach = radius + max_radius_;
  const auto x0 = coord(center.x - reach), x1 = coord(center.x + reach);
  const auto y0 = coord(center.y - reach), y1 = coord(center.y + reach);
  const auto z0 = coord(center.z - reach), z1 = coord(center.z + reach);
  for (auto i = x0; i <= x1; ++i) {
    for (auto j = y0; j <= y1; ++j) {
      for (auto k = z0; k <= z1; ++k) {
        auto it = buckets_.find(key(i, j, k));
        if (it == buckets_.end()) continue;
        for (auto s : it->second) {
          const double r = spheres_[s].radius + radius;
          if (norm2(spheres_[s].center - center) <= r * r) return true;
        }
      }
    }
  }
  return false;
}

namespace {

// Larger cells first: they are the hardest to fit.
constexpr std::array<Kind, 3> kSeedOrder{Kind::WhiteCell, Kind::RedCell, Kind::Platelet};

Vec3 sample_in_slab(const Scenario& s, double radius, double z_lo, double z_hi, RngSequence& rng) {
  const double rmax = s.cylinder().radius - radius - kPlacementClearance;
  const double rho = rmax * std::sqrt(rng.uniform());
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double z = z_lo + (z_hi - z_lo) * rng.uniform();
  return s.frame().to_world({rho * std::cos(phi), rho * std::sin(phi), z});
}

// Axial range of centers for a sphere of `radius` in [z_lo, z_hi) that keeps it off the end faces.
std::pair<double, double> center_range(const Scenario& s, double radius, double z_lo, double z_hi) {
  const double lim = s.half_length() - radius - kPlacementClearance;
  return {std::max(z_lo, -lim), std::min(z_hi, lim)};
}

bool try_place(const Scenario& s, Occupancy& occ, double radius, double z_lo, double z_hi, RngSequence& rng,
               Vec3& out) {
  const auto [lo, hi] = center_range(s, radius, z_lo, z_hi);
  if (!(lo < hi)) return false;
  for (std::uint32_t attempt = 0; attempt < kPlacementRetries; ++attempt) {
    const Vec3 c = sample_in_slab(s, radius, lo, hi, rng);
    if (!s.fits(c, radius) || occ.overlaps(c, radius)) continue;
    out = c;
    return true;
  }
  return false;
}

[[noreturn]] void density_failure(Kind k, double z_lo) {
  fail(ErrorKind::SeedingDensity, "could not place a " + std::string(to_string(k)) + " near z = " +
                                      std::to_string(z_lo * 1e6) + " um within " +
                                      std::to_string(kPlacementRetries) +
                                      " attempts; the requested concentrations are too dense to pack");
}

}  // namespace

std::vector<NanoObject> seed_blood(const Scenario& s, ObjectId& next_id) {
  const auto& p = s.params();
  const double h = p.creation_slab;
  const double L = p.vessel_length;
  const auto copies = static_cast<std::uint64_t>(std::ceil(L / h));
  const double area = std::numbers::pi * p.vessel_radius * p.vessel_radius;
  Occupancy occ(2.0 * s.max_radius());

  struct Local {
    Kind kind;
    Vec3 local;  // vessel-frame coordinates relative to the slab's lower face
  };
  std::vector<Local> pattern;
  std::array<double, kKindCount> carry{};
  std::vector<NanoObject> out;

  for (std::uint64_t copy = 0; copy < copies; ++copy) {
    const double z_lo = -0.5 * L + copy * h;
    const double z_hi = std::min(z_lo + h, 0.5 * L);
    const double volume = area * (z_hi - z_lo);
    RngSequence rng({p.seed, make_stream(StreamTag::Seeding, copy)});
    const double twist = 2.0 * std::numbers::pi * rng.uniform();
    const double ct = std::cos(twist), st = std::sin(twist);

    for (Kind k : kSeedOrder) {
      const double radius = s.kind(k).radius;
      carry[index_of(k)] += p.kind(k).concentration * volume;
      const auto n = static_cast<std::uint64_t>(std::max(0.0, std::round(carry[index_of(k)])));
      carry[index_of(k)] -= static_cast<double>(n);

      std::uint64_t placed = 0;
      if (copy > 0) {
        // Reuse the first slab's pattern, rotated about the axis and shifted.
        for (const auto& e : pattern) {
          if (placed == n) break;
          if (e.kind != k) continue;
          const Vec3 local{e.local.x * ct - e.local.y * st, e.local.x * st + e.local.y * ct, z_lo + e.local.z};
          const Vec3 c = s.frame().to_world(local);
          if (local.z >= z_hi || !s.fits(c, radius) || occ.overlaps(c, radius)) continue;
          occ.add(c, radius);
          out.push_back(s.make_object(next_id++, k, c));
          ++placed;
        }
      }
      for (; placed < n; ++placed) {
        Vec3 c;
        if (!try_place(s, occ, radius, z_lo, z_hi, rng, c)) density_failure(k, z_lo);
        occ.add(c, radius);
        out.push_back(s.make_object(next_id++, k, c));
        if (copy == 0) {
          const Vec3 local = s.frame().to_local(c);
          pattern.push_back({k, {local.x, local.y, local.z - z_lo}});
        }
      }
    }
  }
  return out;
}

std::pair<double, double> creation_region(const Scenario& s) {
  const double lo = s.inlet_z();
  return {lo, lo + s.params().creation_slab + 4.0 * s.max_radius()};
}

std::vector<NanoObject> maintain_concentration(const Scenario& s, std::span<const NanoObject> nearby,
                                               const std::array<std::uint64_t, kKindCount>& live, StepIndex step,
                                               ObjectId& next_id) {
  const auto target = s.target_counts();
  std::vector<NanoObject> out;
  bool any = false;
  for (Kind k : kSeedOrder) any = any || live[index_of(k)] < target[index_of(k)];
  if (!any) return out;

  Occupancy occ(2.0 * s.max_radius());
  for (const auto& o : nearby) occ.add(o.center, o.radius);
  RngSequence rng({s.params().seed, make_stream(StreamTag::Creation, step)});
  for (Kind k : kSeedOrder) {
    const auto want = target[index_of(k)];
    const auto have = live[index_of(k)];
    if (have >= want) continue;
    const double radius = s.kind(k).radius;
    const double z_lo = s.inlet_z() + radius + kPlacementClearance;
    const double z_hi = z_lo + s.params().creation_slab;
    for (std::uint64_t i = have; i < want; ++i) {
      Vec3 c;
      if (!try_place(s, occ, radius, z_lo, z_hi, rng, c)) density_failure(k, z_lo);
      occ.add(c, radius);
      out.push_back(s.make_object(next_id++, k, c));
    }
  }
  return out;
}

double transmitter_radial(std::uint32_t index, double vessel_radius, double platelet_radius) {
  if (index > 5) fail(ErrorKind::InvalidParameter, "transmitter position index must be 0..5");
  return (vessel_radius - platelet_radius) * static_cast<double>(5 - index) / 5.0;
}

TransmitterPlacement place_transmitter(const Scenario& s, std::span<const NanoObject> existing, ObjectId& next_id) {
  const auto& p = s.params();
  const double rp = s.kind(Kind::Platelet).radius;
  const double r = transmitter_radial(p.position_index, p.vessel_radius, rp);
  const Vec3 center = s.frame().to_world({r, 0.0, s.transmitter_z()});

  TransmitterPlacement out{s.make_object(next_id++, Kind::Platelet, center), {}};
  Occupancy occ(2.0 * s.max_radius());
  occ.add(center, rp);
  std::vector<const NanoObject*> blockers;
  for (const auto& o : existing) {
    const double reach = o.radius + rp;
    if (norm2(o.center - center) <= reach * reach) {
      blockers.push_back(&o);
    } else {
      occ.add(o.center, o.radius);
    }
  }
  std::sort(blockers.begin(), blockers.end(), [](const NanoObject* a, const NanoObject* b) { return a->id < b->id; });
  RngSequence rng({p.seed, make_stream(StreamTag::Transmitter, 0)});
  for (const NanoObject* b : blockers) {
    Vec3 c;
    if (!try_place(s, occ, b->radius, -s.half_length(), s.half_length(), rng, c)) {
      fail(ErrorKind::Placement, "could not relocate object " + std::to_string(b->id) + " away from the transmitter");
    }
    occ.add(c, b->radius);
    NanoObject moved = *b;
    moved.center = c;
    moved.start = c;
    if (moved.mobility == Mobility::Advected) moved.velocity = motion::drift_velocity(c, s.flow());
    out.displaced.push_back(moved);
  }
  return out;
}

std::vector<NanoObject> emit_burst(const Scenario& s, const NanoObject& tx, std::uint32_t burst, ObjectId& next_id) {
  std::vector<NanoObject> out;
  out.reserve(burst);
  const double rc = s.kind(Kind::Carrier).radius;
  const double dist = tx.radius + rc + kPlacementClearance;
  const RngKey key{s.params().seed, make_stream(StreamTag::Burst, tx.id)};
  for (std::uint32_t i = 0; i < burst; ++i) {
    Vec3 c;
    bool ok = false;
    for (std::uint32_t attempt = 0; attempt < kPlacementRetries && !ok; ++attempt) {
      const std::uint64_t counter = (std::uint64_t{attempt} << 32) | i;
      const double u = 2.0 * draw_uniform(key, counter, 0) - 1.0;
      const double phi = 2.0 * std::numbers::pi * draw_uniform(key, counter, 1);
      const double sn = std::sqrt(std::max(0.0, 1.0 - u * u));
      c = tx.center + Vec3{sn * std::cos(phi), sn * std::sin(phi), u} * dist;
      ok = s.fits(c, rc);
    }
    if (!ok) fail(ErrorKind::Placement, "could not place carrier inside the vessel");
    out.push_back(s.make_object(next_id++, Kind::Carrier, c));
  }
  return out;
}

std::vector<NanoObject> make_probes(const Scenario& s, ObjectId& next_id) {
  std::vector<NanoObject> out;
  for (const auto& probe : s.params().probes) {
    NanoObject o = s.make_object(next_id++, probe.kind, probe.center);
    if (probe.radius > 0.0) {
      o.radius = probe.radius;
      o.mass = s.kind(probe.kind).mass * std::pow(probe.radius / s.kind(probe.kind).radius, 3);
    }
    o.mobility = probe.mobility;
    if (probe.mobility != Mobility::Advected) o.velocity = probe.velocity;
    if (!s.fits(o.center, o.radius)) fail(ErrorKind::Placement, "probe does not fit inside the vessel");
    out.push_back(o);
  }
  return out;
}

}  // namespace vesselsim::vessel
