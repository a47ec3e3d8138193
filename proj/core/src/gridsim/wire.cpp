#include "vesselsim/gridsim/wire.hpp"

#include "vesselsim/core/error.hpp"

namespace vesselsim::grid {

std::string_view to_string(MessageType t) noexcept {
  switch (t) {
    case MessageType::Hello: return "HELLO";
    case MessageType::Envelope: return "ENVELOPE";
    case MessageType::Ghost: return "GHOST";
    case MessageType::Ready: return "READY";
    case MessageType::Pending: return "PENDING";
    case MessageType::Advance: return "ADVANCE";
    case MessageType::Abort: return "ABORT";
  }
  return "?";
}

std::string_view to_string(Op op) noexcept {
  switch (op) {
    case Op::Hello: return "hello";
    case Op::Snapshot: return "snapshot";
    case Op::Insert: return "insert";
    case Op::Remove: return "remove";
    case Op::Local: return "local";
    case Op::Deliver: return "deliver";
    case Op::Ghosts: return "ghosts";
    case Op::AcceptGhosts: return "accept-ghosts";
    case Op::Pairs: return "pairs";
    case Op::Report: return "report";
    case Op::Shutdown: return "shutdown";
  }
  return "?";
}

std::vector<std::uint8_t> encode_frame(const Frame& f) {
  const std::size_t body = f.payload.size() + 1;
  if (body > kMaxFrameBytes) fail(ErrorKind::Protocol, "frame too large");
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(body));
  w.u8(static_cast<std::uint8_t>(f.type));
  w.raw(f.payload);
  return w.take();
}

Frame decode_frame(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const auto len = r.u32();
  if (len == 0 || len > kMaxFrameBytes || len != r.remaining()) fail(ErrorKind::Protocol, "bad frame length");
  const auto type = r.u8();
  if (type < 1 || type > 7) fail(ErrorKind::Protocol, "unknown message type " + std::to_string(type));
  Frame f;
  f.type = static_cast<MessageType>(type);
  f.payload.assign(bytes.begin() + 5, bytes.end());
  return f;
}

ByteWriter payload_writer() {
  ByteWriter w;
  w.u16(kWireVersion);
  return w;
}

ByteReader payload_reader(const Frame& f) {
  ByteReader r(f.payload);
  if (const auto v = r.u16(); v != kWireVersion) {
    fail(ErrorKind::Protocol, "unsupported wire version " + std::to_string(v));
  }
  return r;
}

void write_envelope(ByteWriter& w, const engine::ObjectEnvelope& e) {
  write_object(w, e.object);
  w.u32(e.origin);
  w.u32(e.holder);
  w.u8(static_cast<std::uint8_t>(e.via));
  w.u32(e.hops);
}

engine::ObjectEnvelope read_envelope(ByteReader& r) {
  engine::ObjectEnvelope e;
  e.object = read_object(r);
  e.origin = r.u32();
  e.holder = r.u32();
  const auto face = r.u8();
  if (face < 1 || face > 6) fail(ErrorKind::Protocol, "bad face tag");
  e.via = static_cast<Face>(face);
  e.hops = r.u32();
  return e;
}

void write_envelopes(ByteWriter& w, std::span<const engine::ObjectEnvelope> es) {
  w.u32(static_cast<std::uint32_t>(es.size()));
  for (const auto& e : es) write_envelope(w, e);
}

std::vector<engine::ObjectEnvelope> read_envelopes(ByteReader& r) {
  const auto n = r.count(kObjectWireSize + 13);
  std::vector<engine::ObjectEnvelope> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(read_envelope(r));
  return out;
}

void write_objects(ByteWriter& w, std::span<const NanoObject> os) {
  w.u32(static_cast<std::uint32_t>(os.size()));
  for (const auto& o : os) write_object(w, o);
}

std::vector<NanoObject> read_objects(ByteReader& r) {
  const auto n = r.count(kObjectWireSize);
  std::vector<NanoObject> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(read_object(r));
  return out;
}

void write_report(ByteWriter& w, const engine::PartitionReport& rep) {
  w.u32(rep.id);
  for (auto v : rep.live) w.u64(v);
  for (auto v : rep.exited) w.u64(v);
  w.u64(rep.absorbed);
  w.u64(rep.wall_contacts);
  w.u64(rep.pair_contacts);
  w.u64(rep.clamped);
  w.u32(static_cast<std::uint32_t>(rep.events.size()));
  for (const auto& e : rep.events) {
    w.u64(e.step);
    w.u64(e.carrier);
    w.u32(e.cell);
    w.u32(e.receptor);
  }
}

engine::PartitionReport read_report(ByteReader& r) {
  engine::PartitionReport rep;
  rep.id = r.u32();
  for (auto& v : rep.live) v = r.u64();
  for (auto& v : rep.exited) v = r.u64();
  rep.absorbed = r.u64();
  rep.wall_contacts = r.u64();
  rep.pair_contacts = r.u64();
  rep.clamped = r.u64();
  const auto n = r.count(24);
  for (std::uint32_t i = 0; i < n; ++i) {
    reception::AssimilationEvent e;
    e.step = r.u64();
    e.carrier = r.u64();
    e.cell = r.u32();
    e.receptor = r.u32();
    rep.events.push_back(e);
  }
  return rep;
}

Frame make_hello(const HelloMessage& h) {
  auto w = payload_writer();
  w.u32(h.partition);
  w.u32(h.nx);
  w.u32(h.ny);
  w.u32(h.nz);
  w.u32(h.workers);
  w.str(h.params_json);
  return {MessageType::Hello, w.take()};
}

HelloMessage read_hello(const Frame& f) {
  if (f.type != MessageType::Hello) fail(ErrorKind::Protocol, "expected HELLO");
  auto r = payload_reader(f);
  HelloMessage h;
  h.partition = r.u32();
  h.nx = r.u32();
  h.ny = r.u32();
  h.nz = r.u32();
  h.workers = r.u32();
  h.params_json = r.str();
  r.expect_done();
  return h;
}

Frame make_abort(std::string_view message) {
  auto w = payload_writer();
  w.str(message);
  return {MessageType::Abort, w.take()};
}

std::string read_abort(const Frame& f) {
  auto r = payload_reader(f);
  return r.str();
}

}  // namespace vesselsim::grid
