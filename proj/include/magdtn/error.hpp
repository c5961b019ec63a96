#ifndef MAGDTN_ERROR_HPP
#define MAGDTN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace magdtn {

/// Failure categories shared by every module. The CLI maps them onto exit codes.
enum class ErrorKind {
  OutOfRange,
  NonConvergence,
  NoSignChange,
  ConsistencyFailure,
  NegativeRadicand,
  ModeOverflow,
  WindowTooSmall,
  SeedFailure,
  InvalidBoundary,
  MeshFailure,
  FactorizationFailure,
  ConvergenceFailure,
  AssumptionViolation,
  ZeroField,
  EmptySamples,
  InsufficientData,
  InvalidConfig,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::ConsistencyFailure: return "ConsistencyFailure";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::ModeOverflow: return "ModeOverflow";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::SeedFailure: return "SeedFailure";
    case ErrorKind::InvalidBoundary: return "InvalidBoundary";
    case ErrorKind::MeshFailure: return "MeshFailure";
    case ErrorKind::FactorizationFailure: return "FactorizationFailure";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::AssumptionViolation: return "AssumptionViolation";
    case ErrorKind::ZeroField: return "ZeroField";
    case ErrorKind::EmptySamples: return "EmptySamples";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace magdtn

#endif  // MAGDTN_ERROR_HPP
