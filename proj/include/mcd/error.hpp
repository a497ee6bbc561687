#pragma once

#include <stdexcept>
#include <string>

namespace mcd {

enum class ErrorCode {
  DegenerateOverlap,
  SafeRadiusZero,
  ValidationError,
  OnBoundary,
  TrialsExhausted,
  EmptyCore,
  NoSuchSubcurve,
  CaseAnalysisBreach,
  NoWitness,
  EmptySide,
  NotNormalForm,
  NotSeparable,
  RelationChanged,
  RetriesExhausted,
  TooLarge,
  FormatError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateOverlap: return "DegenerateOverlap";
    case ErrorCode::SafeRadiusZero: return "SafeRadiusZero";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::OnBoundary: return "OnBoundary";
    case ErrorCode::TrialsExhausted: return "TrialsExhausted";
    case ErrorCode::EmptyCore: return "EmptyCore";
    case ErrorCode::NoSuchSubcurve: return "NoSuchSubcurve";
    case ErrorCode::CaseAnalysisBreach: return "CaseAnalysisBreach";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::NotNormalForm: return "NotNormalForm";
    case ErrorCode::NotSeparable: return "NotSeparable";
    case ErrorCode::RelationChanged: return "RelationChanged";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mcd
