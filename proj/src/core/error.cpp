#include "grk/error.hpp"

namespace grk {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kInvalidGeometry: return "invalid geometry";
    case ErrorCode::kInvalidState: return "invalid state";
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kRange: return "range error";
    case ErrorCode::kMode: return "mode error";
    case ErrorCode::kNoRoot: return "no root";
    case ErrorCode::kCapacity: return "capacity exceeded";
    case ErrorCode::kSubspaceViolation: return "subspace violation";
  }
  return "unknown error";
}

}  // namespace grk
