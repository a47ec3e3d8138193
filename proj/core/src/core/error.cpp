#include "vesselsim/core/error.hpp"

namespace vesselsim {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::SeedingDensity: return "seeding-density";
    case ErrorKind::Placement: return "placement";
    case ErrorKind::InvariantBreach: return "invariant-breach";
    case ErrorKind::Io: return "io";
    case ErrorKind::Protocol: return "protocol";
    case ErrorKind::Timeout: return "timeout";
  }
  return "unknown";
}

}  // namespace vesselsim
