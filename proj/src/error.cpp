#include "preyspread/error.hpp"

namespace preyspread {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::ModelDefinition: return "ModelDefinitionError";
    case ErrorCode::NoInteriorEquilibrium: return "NoInteriorEquilibrium";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::BisectionBracketFailure: return "BisectionBracketFailure";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::CflViolation: return "CFLViolation";
    case ErrorCode::FrontReachedBoundary: return "FrontReachedBoundary";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::RegimeUndetermined: return "RegimeUndetermined";
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::Io: return "IoError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace preyspread
