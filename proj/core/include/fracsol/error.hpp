#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracsol {

enum class ErrorCode {
  InvalidArgument,
  PoleError,
  DivergentInput,
  NoConvergence,
  UnsupportedClass,
  NonConvergent,
  QuadratureFailure,
  ShapeMismatch,
  NonDecaying,
  ExponentOutOfRange,
  DegenerateLeading,
  BranchMismatch,
  ComplexRoots,
  DegenerateD,
  UnsupportedAlpha,
  ComplexDiscriminant,
  StepTooLarge,
  ExponentMisalignment,
  PreconditionViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library failure carrying a machine-checkable code and the module that raised it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string_view module, const std::string& what)
      : std::runtime_error(std::string(module) + ": " + std::string(to_string(code)) + ": " + what),
        code_(code),
        module_(module) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PoleError: return "PoleError";
    case ErrorCode::DivergentInput: return "DivergentInput";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::UnsupportedClass: return "UnsupportedClass";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonDecaying: return "NonDecaying";
    case ErrorCode::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorCode::DegenerateLeading: return "DegenerateLeading";
    case ErrorCode::BranchMismatch: return "BranchMismatch";
    case ErrorCode::ComplexRoots: return "ComplexRoots";
    case ErrorCode::DegenerateD: return "DegenerateD";
    case ErrorCode::UnsupportedAlpha: return "UnsupportedAlpha";
    case ErrorCode::ComplexDiscriminant: return "ComplexDiscriminant";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::ExponentMisalignment: return "ExponentMisalignment";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
  }
  return "Unknown";
}

}  // namespace fracsol
