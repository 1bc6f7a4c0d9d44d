#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace horocanon {

enum class ErrorCode {
  NotInvolution,
  NotConnected,
  NotOrientable,
  ParseError,
  SelfAdjacentFace,
  BadValence,
  RepeatedTetrahedron,
  TooSmall,
  DegenerateModulus,
  NonPositiveInput,
  NotLightCone,
  NotCusped,
  NoConvergence,
  DegenerateSolution,
  AngleSumViolation,
  NotConsistent,
  OpenCurve,
  IncompleteStructure,
  FlatTetrahedron,
  Stuck,
  IterationCap,
  DevelopingMismatch,
  DegenerateFace,
  InconsistentVolumes,
  CeilingExceeded,
  Undecided,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it to a status or exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace horocanon
