#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vesselsim {

enum class ErrorKind {
  InvalidParameter,
  Structural,
  Unsupported,
  SeedingDensity,
  Placement,
  InvariantBreach,
  Io,
  Protocol,
  Timeout,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const char* what) {
  if (!cond) fail(kind, what);
}

}  // namespace vesselsim
