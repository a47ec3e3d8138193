#pragma once

#include <array>
#include <cstdint>

namespace vesselsim {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Output is a pure function of (key, counter).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Stream purposes. Each draw is addressed by (seed, stream, counter, slot); the
/// stream packs a purpose tag in its top byte so that independent uses never collide.
enum class StreamTag : std::uint8_t {
  Object = 0,  ///< per-object motion noise; the stream id is the object id
  Seeding = 1,
  Creation = 2,
  Receptors = 3,
  WhiteReceptors = 4,
  Transmitter = 5,
  Burst = 6,
  Relocate = 7,
  Bench = 8,
  Test = 0xff,
};

constexpr std::uint64_t make_stream(StreamTag tag, std::uint64_t id) noexcept {
  return (static_cast<std::uint64_t>(tag) << 56) | (id & 0x00ff'ffff'ffff'ffffULL);
}

/// Deterministic random address.
struct RngKey {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// 128 random bits for (key, counter, slot).
std::array<std::uint32_t, 4> draw_bits(const RngKey& key, std::uint64_t counter, std::uint32_t slot) noexcept;

/// Uniform double in the open interval (0, 1).
double draw_uniform(const RngKey& key, std::uint64_t counter, std::uint32_t slot) noexcept;

/// Standard normal via Box-Muller on the two 64-bit halves of one Philox block.
/// Pure function of (seed, stream, step, slot).
double draw_gaussian(const RngKey& key, std::uint64_t step, std::uint32_t slot) noexcept;

/// Sequential view of one stream: each call consumes the next counter.
class RngSequence {
 public:
  explicit RngSequence(RngKey key, std::uint64_t first = 0) noexcept : key_(key), counter_(first) {}
  double uniform() noexcept { return draw_uniform(key_, counter_++, 0); }
  double gaussian() noexcept { return draw_gaussian(key_, counter_++, 0); }
  std::uint64_t position() const noexcept { return counter_; }

 private:
  RngKey key_;
  std::uint64_t counter_;
};

}  // namespace vesselsim
