#include "horocanon/error.hpp"

namespace horocanon {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::NotOrientable: return "NotOrientable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SelfAdjacentFace: return "SelfAdjacentFace";
    case ErrorCode::BadValence: return "BadValence";
    case ErrorCode::RepeatedTetrahedron: return "RepeatedTetrahedron";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::DegenerateModulus: return "DegenerateModulus";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::NotLightCone: return "NotLightCone";
    case ErrorCode::NotCusped: return "NotCusped";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateSolution: return "DegenerateSolution";
    case ErrorCode::AngleSumViolation: return "AngleSumViolation";
    case ErrorCode::NotConsistent: return "NotConsistent";
    case ErrorCode::OpenCurve: return "OpenCurve";
    case ErrorCode::IncompleteStructure: return "IncompleteStructure";
    case ErrorCode::FlatTetrahedron: return "FlatTetrahedron";
    case ErrorCode::Stuck: return "Stuck";
    case ErrorCode::IterationCap: return "IterationCap";
    case ErrorCode::DevelopingMismatch: return "DevelopingMismatch";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::InconsistentVolumes: return "InconsistentVolumes";
    case ErrorCode::CeilingExceeded: return "CeilingExceeded";
    case ErrorCode::Undecided: return "Undecided";
  }
  return "Unknown";
}

}  // namespace horocanon
