#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vesselsim/core/bytes.hpp"
#include "vesselsim/engine/partition_world.hpp"

namespace vesselsim::grid {

inline constexpr std::uint16_t kWireVersion = 1;
/// Frames larger than this are rejected as corrupt.
inline constexpr std::uint32_t kMaxFrameBytes = 1u << 30;

enum class MessageType : std::uint8_t {
  Hello = 1,
  Envelope = 2,
  Ghost = 3,
  Ready = 4,
  Pending = 5,
  Advance = 6,
  Abort = 7,
};
std::string_view to_string(MessageType t) noexcept;

/// Partition commands carried by ADVANCE and echoed in READY / PENDING replies.
enum class Op : std::uint8_t {
  Hello = 0,
  Snapshot = 1,
  Insert = 2,
  Remove = 3,
  Local = 4,
  Deliver = 5,
  Ghosts = 6,
  AcceptGhosts = 7,
  Pairs = 8,
  Report = 9,
  Shutdown = 10,
};
std::string_view to_string(Op op) noexcept;

struct Frame {
  MessageType type = MessageType::Ready;
  std::vector<std::uint8_t> payload;  ///< starts with the u16 wire version
};

/// u32 LE length of (type byte + payload), u8 type, payload.
std::vector<std::uint8_t> encode_frame(const Frame& f);
/// Decodes exactly one frame from `bytes`. Throws Error(Protocol).
Frame decode_frame(std::span<const std::uint8_t> bytes);

/// Payload writer/reader that add and check the version prefix.
ByteWriter payload_writer();
ByteReader payload_reader(const Frame& f);
/// The reader views the frame payload, so the frame must outlive it.
ByteReader payload_reader(Frame&& f) = delete;

void write_envelope(ByteWriter& w, const engine::ObjectEnvelope& e);
engine::ObjectEnvelope read_envelope(ByteReader& r);
void write_envelopes(ByteWriter& w, std::span<const engine::ObjectEnvelope> es);
std::vector<engine::ObjectEnvelope> read_envelopes(ByteReader& r);
void write_objects(ByteWriter& w, std::span<const NanoObject> os);
std::vector<NanoObject> read_objects(ByteReader& r);
void write_report(ByteWriter& w, const engine::PartitionReport& rep);
engine::PartitionReport read_report(ByteReader& r);

struct HelloMessage {
  PartitionId partition = 0;
  std::uint32_t nx = 1, ny = 1, nz = 1;
  std::uint32_t workers = 1;
  std::string params_json;
};
Frame make_hello(const HelloMessage& h);
HelloMessage read_hello(const Frame& f);

Frame make_abort(std::string_view message);
std::string read_abort(const Frame& f);

}  // namespace vesselsim::grid
