#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vesselsim/core/error.hpp"
#include "vesselsim/core/nano_object.hpp"
#include "vesselsim/core/vec3.hpp"

namespace vesselsim {

/// Little-endian append-only encoder. Doubles are written as their IEEE-754 bits.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void vec3(const Vec3& v) {
    f64(v.x);
    f64(v.y);
    f64(v.z);
  }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.insert(buf_.end(), s.begin(), s.end());
  }
  void raw(std::span<const std::uint8_t> bytes) { buf_.insert(buf_.end(), bytes.begin(), bytes.end()); }

  const std::vector<std::uint8_t>& bytes() const noexcept { return buf_; }
  std::vector<std::uint8_t> take() noexcept { return std::move(buf_); }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> buf_;
};

/// Bounds-checked decoder matching ByteWriter. Throws Error(Protocol) on truncation.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) noexcept : data_(data) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(get(8)); }
  Vec3 vec3() {
    Vec3 v;
    v.x = f64();
    v.y = f64();
    v.z = f64();
    return v;
  }
  std::string str() {
    const auto n = u32();
    need(n);
    std::string s(reinterpret_cast<const char*>(data_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  /// Element count prefix, sanity-checked against the bytes left (each element needs at least `min_size`).
  std::uint32_t count(std::size_t min_size) {
    const auto n = u32();
    if (min_size > 0 && n > remaining() / min_size) fail(ErrorKind::Protocol, "element count exceeds payload");
    return n;
  }

  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  bool done() const noexcept { return pos_ == data_.size(); }
  void expect_done() const {
    if (!done()) fail(ErrorKind::Protocol, "trailing bytes in payload");
  }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) fail(ErrorKind::Protocol, "truncated payload");
  }
  std::uint64_t get(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{data_[pos_ + i]} << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

/// Full object state in a fixed field order:
/// id, kind, position, velocity, radius, mass, rng stream, wall hits, pair hits,
/// mobility, step start, owner domain, alive.
void write_object(ByteWriter& w, const NanoObject& o);
NanoObject read_object(ByteReader& r);
inline constexpr std::size_t kObjectWireSize = 8 + 1 + 24 + 24 + 8 + 8 + 8 + 4 + 4 + 1 + 24 + 4 + 1;

}  // namespace vesselsim
