#ifndef CLEARNET_ERROR_HPP
#define CLEARNET_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clearnet {

enum class ErrorCode {
  NegativeEntry,
  NonFiniteEntry,
  DimensionMismatch,
  NonzeroSinkRow,
  NonzeroDiagonal,
  NonpositiveSinkAssets,
  InvalidParameter,
  SingularSystem,
  NoConvergence,
  OracleNoConvergence,
  DivisionByZero,
  ZeroVector,
  PowerIterationStall,
  PreconditionViolated,
  InvalidInterpolation,
  SearchExhausted,
  SelfConsistencyFailed,
  NotAllDefaulted,
  NotSingleCreditor,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. Carries a
/// machine-readable code and, where one exists, the offending node index.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::ptrdiff_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::ptrdiff_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::ptrdiff_t> index_;
};

/// Raised by the relaxed shock search when no admissible step pushes every
/// node into default. `still_solvent` lists the banks that stayed solvent at
/// the last step evaluated (empty when no step was admissible at all).
class SearchExhausted : public Error {
 public:
  SearchExhausted(const std::string& message, int max_steps, int last_step,
                  std::vector<std::ptrdiff_t> still_solvent);

  int max_steps() const noexcept { return max_steps_; }
  int last_step() const noexcept { return last_step_; }
  const std::vector<std::ptrdiff_t>& still_solvent() const noexcept {
    return still_solvent_;
  }

 private:
  int max_steps_;
  int last_step_;
  std::vector<std::ptrdiff_t> still_solvent_;
};

/// Parse failure with a 1-based line and column into the offending input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace clearnet

#endif  // CLEARNET_ERROR_HPP
