#pragma once

#include <stdexcept>
#include <string>

namespace tess {

enum class ErrorCode {
  DuplicateNode,
  LoopLink,
  DuplicateLink,
  CrossingLinkInteriors,
  NodeOnLinkInterior,
  ToleranceFailure,
  DegenerateTangency,
  NonClosingWalk,
  TurningSumAnomaly,
  AmbiguousContainment,
  EmptyWindow,
  CoverageTimeout,
  ConfigError,
  IoError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::LoopLink: return "LoopLink";
    case ErrorCode::DuplicateLink: return "DuplicateLink";
    case ErrorCode::CrossingLinkInteriors: return "CrossingLinkInteriors";
    case ErrorCode::NodeOnLinkInterior: return "NodeOnLinkInterior";
    case ErrorCode::ToleranceFailure: return "ToleranceFailure";
    case ErrorCode::DegenerateTangency: return "DegenerateTangency";
    case ErrorCode::NonClosingWalk: return "NonClosingWalk";
    case ErrorCode::TurningSumAnomaly: return "TurningSumAnomaly";
    case ErrorCode::AmbiguousContainment: return "AmbiguousContainment";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::CoverageTimeout: return "CoverageTimeout";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tess
