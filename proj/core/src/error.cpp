#include "clearnet/error.hpp"

#include <utility>

namespace clearnet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonzeroSinkRow: return "NonzeroSinkRow";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::NonpositiveSinkAssets: return "NonpositiveSinkAssets";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OracleNoConvergence: return "OracleNoConvergence";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::PowerIterationStall: return "PowerIterationStall";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InvalidInterpolation: return "InvalidInterpolation";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::SelfConsistencyFailed: return "SelfConsistencyFailed";
    case ErrorCode::NotAllDefaulted: return "NotAllDefaulted";
    case ErrorCode::NotSingleCreditor: return "NotSingleCreditor";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::ptrdiff_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      index_(index) {}

SearchExhausted::SearchExhausted(const std::string& message, int max_steps,
                                 int last_step,
                                 std::vector<std::ptrdiff_t> still_solvent)
    : Error(ErrorCode::SearchExhausted, message),
      max_steps_(max_steps),
      last_step_(last_step),
      still_solvent_(std::move(still_solvent)) {}

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column)
    : Error(ErrorCode::ParseError, message + " (line " + std::to_string(line) +
                                       ", column " + std::to_string(column) +
                                       ")"),
      line_(line),
      column_(column) {}

}  // namespace clearnet
