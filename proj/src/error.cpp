#include "funkgeo/error.hpp"

namespace funkgeo {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::CoincidentPoints: return "coincident points";
    case ErrorCode::AntipodalPoints: return "antipodal points";
    case ErrorCode::NotOnLine: return "point not on line";
    case ErrorCode::UnsupportedDimension: return "unsupported dimension";
    case ErrorCode::NumericallyUnstable: return "numerically unstable";
    case ErrorCode::LatticePoint: return "point lies in the lattice";
    case ErrorCode::NotHalfLattice: return "point not in the half lattice";
    case ErrorCode::NoPreimage: return "no preimage";
    case ErrorCode::IllConditioned: return "ill conditioned";
    case ErrorCode::CapExceeded: return "size cap exceeded";
    case ErrorCode::InsufficientGeodesics: return "insufficient geodesics";
    case ErrorCode::NonFinite: return "non-finite value";
  }
  return "unknown error";
}

}  // namespace funkgeo
