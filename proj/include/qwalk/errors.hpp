#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qwalk {

enum class ErrorCode {
  DegenerateTheta,
  OutOfRange,
  ResourceLimit,
  GridTooSmall,
  NotNormalizable,
  IntegerA,
  InvalidSpin,
  OutOfSupport,
  NoConvergence,
  InvalidArgument,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateTheta: return "DegenerateTheta";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::NotNormalizable: return "NotNormalizable";
    case ErrorCode::IntegerA: return "IntegerA";
    case ErrorCode::InvalidSpin: return "InvalidSpin";
    case ErrorCode::OutOfSupport: return "OutOfSupport";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Library error. what() is prefixed with the error name, e.g.
/// "DegenerateTheta: theta=1.5707963267948966".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qwalk
