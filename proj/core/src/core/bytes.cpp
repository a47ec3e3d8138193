#include "vesselsim/core/bytes.hpp"

namespace vesselsim {

void write_object(ByteWriter& w, const NanoObject& o) {
  w.u64(o.id);
  w.u8(static_cast<std::uint8_t>(o.kind));
  w.vec3(o.center);
  w.vec3(o.velocity);
  w.f64(o.radius);
  w.f64(o.mass);
  w.u64(o.rng_stream);
  w.u32(o.wall_hits);
  w.u32(o.pair_hits);
  w.u8(static_cast<std::uint8_t>(o.mobility));
  w.vec3(o.start);
  w.u32(o.owner_domain);
  w.u8(o.alive ? 1 : 0);
}

NanoObject read_object(ByteReader& r) {
  NanoObject o;
  o.id = r.u64();
  const auto kind = r.u8();
  if (kind >= kKindCount) fail(ErrorKind::Protocol, "bad object kind");
  o.kind = static_cast<Kind>(kind);
  o.center = r.vec3();
  o.velocity = r.vec3();
  o.radius = r.f64();
  o.mass = r.f64();
  o.rng_stream = r.u64();
  o.wall_hits = r.u32();
  o.pair_hits = r.u32();
  const auto mob = r.u8();
  if (mob > static_cast<std::uint8_t>(Mobility::Fixed)) fail(ErrorKind::Protocol, "bad object mobility");
  o.mobility = static_cast<Mobility>(mob);
  o.start = r.vec3();
  o.owner_domain = r.u32();
  o.alive = r.u8() != 0;
  return o;
}

}  // namespace vesselsim
