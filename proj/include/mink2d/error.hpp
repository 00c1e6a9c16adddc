#pragma once

#include <stdexcept>
#include <string>

namespace mink2d {

enum class ErrorCode {
  invalid_argument = 1,
  non_smooth,
  not_strictly_convex,
  convergence,
  degenerate,
  io,
  verification,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the natural-parameter builder; carries the angle of the detected corner.
class NonSmoothError : public Error {
 public:
  NonSmoothError(double angle, const std::string& what)
      : Error(ErrorCode::non_smooth, what), angle_(angle) {}
  double angle() const noexcept { return angle_; }

 private:
  double angle_;
};

}  // namespace mink2d
