#pragma once

#include <stdexcept>
#include <string>

namespace grk {

// Mirrors grk_status in grk_c.h; keep the numeric values in sync.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kInvalidGeometry = 2,
  kInvalidState = 3,
  kDomain = 4,
  kRange = 5,
  kMode = 6,
  kNoRoot = 7,
  kCapacity = 8,
  kSubspaceViolation = 9,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by project_to_symmetric when a full vector is not constant on the
// three symmetry classes.
class SubspaceViolation : public Error {
 public:
  SubspaceViolation(double max_deviation, const std::string& what)
      : Error(ErrorCode::kSubspaceViolation, what),
        max_deviation_(max_deviation) {}

  double max_deviation() const noexcept { return max_deviation_; }

 private:
  double max_deviation_;
};

}  // namespace grk
