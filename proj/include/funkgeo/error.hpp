#pragma once

#include <stdexcept>
#include <string>

namespace funkgeo {

enum class ErrorCode {
  InvalidArgument = 1,
  CoincidentPoints,
  AntipodalPoints,
  NotOnLine,
  UnsupportedDimension,
  NumericallyUnstable,
  LatticePoint,
  NotHalfLattice,
  NoPreimage,
  IllConditioned,
  CapExceeded,
  InsufficientGeodesics,
  NonFinite,
};

const char* to_string(ErrorCode code) noexcept;

/// Library-wide exception; the C API maps `code()` onto its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace funkgeo
