#pragma once

#include <stdexcept>
#include <string>

namespace hopfsec {

/// Failure categories. The CLI maps each one to a fixed exit code.
enum class ErrorKind {
  InvalidInput,
  NoConvergence,
  ExhaustedAttempts,
  BoundaryFibreQuery,
  NotASection,
  PhaseStepTooLarge,
  TrackLost,
  MatchingFailed,
  DisconnectedBuilding,
  NonIntegerGenus,
  IllegalMove,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ExhaustedAttempts: return "ExhaustedAttempts";
    case ErrorKind::BoundaryFibreQuery: return "BoundaryFibreQuery";
    case ErrorKind::NotASection: return "NotASection";
    case ErrorKind::PhaseStepTooLarge: return "PhaseStepTooLarge";
    case ErrorKind::TrackLost: return "TrackLost";
    case ErrorKind::MatchingFailed: return "MatchingFailed";
    case ErrorKind::DisconnectedBuilding: return "DisconnectedBuilding";
    case ErrorKind::NonIntegerGenus: return "NonIntegerGenus";
    case ErrorKind::IllegalMove: return "IllegalMove";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hopfsec
