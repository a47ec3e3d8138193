#include "vesselsim/core/rng.hpp"

#include <cmath>
#include <numbers>

namespace vesselsim {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// splitmix64 finalizer, used to spread the 64-bit seed and stream into the key.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline double to_open_unit(std::uint64_t bits) noexcept {
  // 53 random mantissa bits, shifted off zero: result in (0, 1).
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::array<std::uint32_t, 4> draw_bits(const RngKey& key, std::uint64_t counter, std::uint32_t slot) noexcept {
  const std::uint64_t k = mix64(key.seed ^ mix64(key.stream));
  const std::uint64_t s = key.stream;
  const std::array<std::uint32_t, 4> ctr{static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32),
                                         slot, static_cast<std::uint32_t>(s) ^ static_cast<std::uint32_t>(s >> 32)};
  return philox4x32(ctr, {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)});
}

double draw_uniform(const RngKey& key, std::uint64_t counter, std::uint32_t slot) noexcept {
  const auto b = draw_bits(key, counter, slot);
  return to_open_unit((static_cast<std::uint64_t>(b[0]) << 32) | b[1]);
}

double draw_gaussian(const RngKey& key, std::uint64_t step, std::uint32_t slot) noexcept {
  const auto b = draw_bits(key, step, slot);
  const double u1 = to_open_unit((static_cast<std::uint64_t>(b[0]) << 32) | b[1]);
  const double u2 = to_open_unit((static_cast<std::uint64_t>(b[2]) << 32) | b[3]);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace vesselsim
