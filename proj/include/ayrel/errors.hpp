#pragma once

#include <stdexcept>
#include <string>

namespace ayrel {

/// Every failure the library reports is an `Error` tagged with one of these kinds.
enum class ErrorKind {
  InvalidGenus,
  CertificateFailure,
  DivisionByZero,
  ContextMismatch,
  ParseError,
  NumericFailure,
  InternalError,
  InvalidArgument,
  ReturnNotResolved,
  OutOfRange,
  AperiodicitySuspected,
  InvalidSurface,
  SlitCrossesSingularLevel,
  CanonicalizationAmbiguous,
  NotSingleLabel,
  ClassificationFailure,
  SubstitutionContextUndefined,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidGenus: return "invalid-genus";
    case ErrorKind::CertificateFailure: return "certificate-failure";
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::ContextMismatch: return "context-mismatch";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::NumericFailure: return "numeric-failure";
    case ErrorKind::InternalError: return "internal-error";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::ReturnNotResolved: return "return-not-resolved";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::AperiodicitySuspected: return "aperiodicity-suspected";
    case ErrorKind::InvalidSurface: return "invalid-surface";
    case ErrorKind::SlitCrossesSingularLevel: return "slit-crosses-singular-level";
    case ErrorKind::CanonicalizationAmbiguous: return "canonicalization-ambiguous";
    case ErrorKind::NotSingleLabel: return "not-single-label";
    case ErrorKind::ClassificationFailure: return "classification-failure";
    case ErrorKind::SubstitutionContextUndefined: return "substitution-context-undefined";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ayrel
