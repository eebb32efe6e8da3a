#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lapinv {

/// Stable error codes surfaced by every module and by the CLI.
enum class ErrorCode {
  DuplicateEdge,
  SelfLoop,
  NonPositiveWeight,
  DimensionMismatch,
  NotConnected,
  ConvergenceFailure,
  KTooLarge,
  SizeCapExceeded,
  SingularShiftedMatrix,
  SupplyNotBalanced,
  EmptyBasis,
  NonPositiveSigma,
  InvalidOrder,
  SigmaOutOfRange,
  IndexOutOfRange,
  InvalidPair,
  BadAlpha,
  WrongBasisSize,
  BadParams,
  DegenerateComponent,
  LengthMismatch,
  ConstantVector,
  ParseError,
  EmptyInput,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Process exit category for a code: 3 for data errors, 4 for numerical failures.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message);

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

class ConvergenceError : public Error {
public:
  ConvergenceError(std::size_t iterations, double worst_residual);

  std::size_t iterations() const noexcept { return iterations_; }
  double worst_residual() const noexcept { return worst_residual_; }

private:
  std::size_t iterations_;
  double worst_residual_;
};

/// Line numbers start at 1; 0 means the input has no line structure.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &message);

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace lapinv
