#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace preyspread {

enum class ErrorCode {
  Domain,                   // argument outside the admissible set
  ModelDefinition,          // model produced a non-finite value or violates a standing sign condition
  NoInteriorEquilibrium,
  StepTooLarge,
  Inconclusive,
  BisectionBracketFailure,
  NonFinite,
  CflViolation,
  FrontReachedBoundary,
  InsufficientData,
  RegimeUndetermined,
  Config,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace preyspread
