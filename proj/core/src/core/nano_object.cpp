#include "vesselsim/core/nano_object.hpp"

#include "vesselsim/core/error.hpp"

namespace vesselsim {

std::string_view to_string(Kind kind) noexcept {
  switch (kind) {
    case Kind::Carrier: return "carrier";
    case Kind::Platelet: return "platelet";
    case Kind::RedCell: return "red_cell";
    case Kind::WhiteCell: return "white_cell";
  }
  return "unknown";
}

std::optional<Kind> kind_from_string(std::string_view s) noexcept {
  for (Kind k : kAllKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Mobility m) noexcept {
  switch (m) {
    case Mobility::Advected: return "advected";
    case Mobility::Ballistic: return "ballistic";
    case Mobility::Fixed: return "fixed";
  }
  return "unknown";
}

std::optional<Mobility> mobility_from_string(std::string_view s) noexcept {
  for (Mobility m : {Mobility::Advected, Mobility::Ballistic, Mobility::Fixed}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

SimClock::SimClock(double dt, StepIndex step) : dt_(dt), step_(step) {
  if (!(dt > 0.0)) fail(ErrorKind::InvalidParameter, "SimClock: dt must be > 0");
}

}  // namespace vesselsim
