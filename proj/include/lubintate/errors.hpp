#pragma once

#include <stdexcept>
#include <string>

namespace lubintate {

enum class ErrorCode {
  SpecMismatch,
  InvalidSpec,
  NotDivisible,
  PrecisionExhausted,
  DivisionByZero,
  NoEmbedding,
  SingularMatrix,
  FieldMismatch,
  NotAUnit,
  CompositionDiverges,
  NotAOneUnit,
  DenominatorDivisibleByP,
  OutOfRange,
  DimensionMismatch,
  TooLarge,
  NotPrimitive,
  ZeroLambda,
  NotInvertible,
  IncompatiblePair,
  ShapeMismatch,
  SearchFailed,
  InvalidInput,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code; every failure in the library
/// is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NoEmbedding: return "NoEmbedding";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::CompositionDiverges: return "CompositionDiverges";
    case ErrorCode::NotAOneUnit: return "NotAOneUnit";
    case ErrorCode::DenominatorDivisibleByP: return "DenominatorDivisibleByP";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::ZeroLambda: return "ZeroLambda";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::IncompatiblePair: return "IncompatiblePair";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SearchFailed: return "SearchFailed";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace lubintate
