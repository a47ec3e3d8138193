#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "vesselsim/core/vec3.hpp"

namespace vesselsim {

using ObjectId = std::uint64_t;
using DomainId = std::uint32_t;
using StepIndex = std::uint64_t;

inline constexpr DomainId kNoDomain = 0xffff'ffffu;

enum class Kind : std::uint8_t { Carrier = 0, Platelet = 1, RedCell = 2, WhiteCell = 3 };
inline constexpr std::size_t kKindCount = 4;
inline constexpr std::array<Kind, kKindCount> kAllKinds{Kind::Carrier, Kind::Platelet, Kind::RedCell, Kind::WhiteCell};

std::string_view to_string(Kind kind) noexcept;
std::optional<Kind> kind_from_string(std::string_view s) noexcept;
constexpr std::size_t index_of(Kind k) noexcept { return static_cast<std::size_t>(k); }

/// How the motion phase moves an object.
enum class Mobility : std::uint8_t {
  Advected = 0,   ///< Poiseuille drift re-imposed each step plus Brownian noise
  Ballistic = 1,  ///< keeps its velocity (changed only by collisions); no noise
  Fixed = 2,      ///< never moves
};

std::string_view to_string(Mobility m) noexcept;
std::optional<Mobility> mobility_from_string(std::string_view s) noexcept;

/// Any moving sphere: carrier molecule or blood cell.
struct NanoObject {
  ObjectId id = 0;
  Kind kind = Kind::Carrier;
  Mobility mobility = Mobility::Advected;
  Vec3 center{};
  /// Center at the start of the current step (used for impact backtracking).
  Vec3 start{};
  Vec3 velocity{};
  double radius = 0.0;
  double mass = 0.0;
  std::uint64_t rng_stream = 0;
  DomainId owner_domain = kNoDomain;
  bool alive = true;
  std::uint32_t wall_hits = 0;
  std::uint32_t pair_hits = 0;

  friend bool operator==(const NanoObject&, const NanoObject&) = default;
};

/// Discrete clock. Simulated time is step * dt.
class SimClock {
 public:
  explicit SimClock(double dt, StepIndex step = 0);
  StepIndex step() const noexcept { return step_; }
  double dt() const noexcept { return dt_; }
  double time() const noexcept { return static_cast<double>(step_) * dt_; }
  void advance() noexcept { ++step_; }

 private:
  double dt_;
  StepIndex step_;
};

}  // namespace vesselsim
