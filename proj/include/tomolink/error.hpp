#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tomolink {

enum class ErrorKind {
  MalformedInput,
  Validation,
  EmptyInterior,
  TooSmall,
  CapExceeded,
  InteriorDisconnected,
  UnknownColumn,
  InconsistentMeasurements,
  PreconditionFailed,
  SearchExhausted,
  SearchSpaceTooLarge,
  NotFound,
  MalformedCertificate,
  MissingWeight,
  Infeasible,
};

// Sub-codes carried by ErrorKind::Validation.
enum class ValidationCode {
  None,
  SelfLoop,
  DuplicateLink,
  MonitorLink,
  Disconnected,
  MonitorMissing,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InteriorDisconnected: return "InteriorDisconnected";
    case ErrorKind::UnknownColumn: return "UnknownColumn";
    case ErrorKind::InconsistentMeasurements: return "InconsistentMeasurements";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::MalformedCertificate: return "MalformedCertificate";
    case ErrorKind::MissingWeight: return "MissingWeight";
    case ErrorKind::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

inline std::string_view to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::None: return "NONE";
    case ValidationCode::SelfLoop: return "SELF_LOOP";
    case ValidationCode::DuplicateLink: return "DUPLICATE_LINK";
    case ValidationCode::MonitorLink: return "MONITOR_LINK";
    case ValidationCode::Disconnected: return "DISCONNECTED";
    case ValidationCode::MonitorMissing: return "MONITOR_MISSING";
  }
  return "NONE";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        ValidationCode code = ValidationCode::None)
      : std::runtime_error(message), kind_(kind), code_(code) {}

  ErrorKind kind() const noexcept { return kind_; }
  ValidationCode code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  ValidationCode code_;
};

// Process exit status for a failure of the given kind:
// 1 = invalid input or unmet precondition, 2 = counterexample signal
// (a search the theory guarantees to succeed came back empty),
// 3 = resource ceiling hit.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SearchExhausted:
    case ErrorKind::NotFound:
      return 2;
    case ErrorKind::CapExceeded:
    case ErrorKind::SearchSpaceTooLarge:
      return 3;
    default:
      return 1;
  }
}

}  // namespace tomolink
