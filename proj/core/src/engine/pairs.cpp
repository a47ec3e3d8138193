#include "vesselsim/engine/pairs.hpp"

#include "vesselsim/collision/two_body.hpp"
#include "vesselsim/core/error.hpp"

namespace vesselsim::engine {

namespace {

bool receptive_pair(const NanoObject& carrier, const NanoObject& cell, const vessel::Scenario& s) {
  return carrier.kind == Kind::Carrier && cell.kind != Kind::Carrier && s.has_receptors(cell.kind);
}

Vec3 contact_direction(const NanoObject& from, const NanoObject& to) {
  const Vec3 d = to.center - from.center;
  const double n = norm(d);
  return n > 0.0 ? d / n : Vec3{1.0, 0.0, 0.0};
}

}  // namespace

PairOutcome resolve_pair(const NanoObject& a, const NanoObject& b, const vessel::Scenario& s, double dt) {
  if (!(a.id < b.id)) fail(ErrorKind::InvariantBreach, "pair must be ordered by id");
  PairOutcome out;
  const bool carrier_involved = a.kind == Kind::Carrier || b.kind == Kind::Carrier;
  if (carrier_involved && !s.params().carrier_collisions) return out;
  const bool fixed_a = a.mobility == Mobility::Fixed;
  const bool fixed_b = b.mobility == Mobility::Fixed;
  if (fixed_a && fixed_b) return out;
  out.first.contact = out.second.contact = true;

  const double rc = s.kind(Kind::Carrier).radius;
  if (receptive_pair(a, b, s) && s.cell_assimilation(b, contact_direction(b, a), rc)) {
    out.first.absorbed = true;
    return out;
  }
  if (receptive_pair(b, a, s) && s.cell_assimilation(a, contact_direction(a, b), rc)) {
    out.second.absorbed = true;
    return out;
  }

  auto [da, db] = collision::separation_displacements(a.center, a.radius, b.center, b.radius);
  if (fixed_a) {
    db = db - da;
    da = {};
  } else if (fixed_b) {
    da = da - db;
    db = {};
  }

  const Vec3 normal = contact_direction(a, b);
  if (dot(a.velocity - b.velocity, normal) > 0.0) {
    const double e = s.params().cell_restitution;
    Vec3 va = a.velocity;
    Vec3 vb = b.velocity;
    if (fixed_a || fixed_b) {
      // Infinite mass limit: only the mover's relative normal velocity is reversed and damped.
      Vec3& v = fixed_a ? vb : va;
      const Vec3& wall = fixed_a ? a.velocity : b.velocity;
      const double un = dot(v - wall, normal);
      v = v - normal * ((1.0 + e) * un);
    } else {
      const auto r = collision::resolve_two_body(a.velocity, b.velocity, a.mass, b.mass, e, normal);
      va = r.v1;
      vb = r.v2;
    }
    const double t = collision::pair_contact_fraction(a.start, a.center, b.start, b.center, a.radius + b.radius);
    const double rest = (1.0 - t) * dt;
    out.first.velocity_change = va - a.velocity;
    out.second.velocity_change = vb - b.velocity;
    da += out.first.velocity_change * rest;
    db += out.second.velocity_change * rest;
  }
  out.first.displacement = da;
  out.second.displacement = db;
  return out;
}

}  // namespace vesselsim::engine
