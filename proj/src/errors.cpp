#include "lapinv/errors.hpp"

#include <sstream>

namespace lapinv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::DuplicateEdge: return "DuplicateEdge";
  case ErrorCode::SelfLoop: return "SelfLoop";
  case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::NotConnected: return "NotConnected";
  case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
  case ErrorCode::KTooLarge: return "KTooLarge";
  case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
  case ErrorCode::SingularShiftedMatrix: return "SingularShiftedMatrix";
  case ErrorCode::SupplyNotBalanced: return "SupplyNotBalanced";
  case ErrorCode::EmptyBasis: return "EmptyBasis";
  case ErrorCode::NonPositiveSigma: return "NonPositiveSigma";
  case ErrorCode::InvalidOrder: return "InvalidOrder";
  case ErrorCode::SigmaOutOfRange: return "SigmaOutOfRange";
  case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
  case ErrorCode::InvalidPair: return "InvalidPair";
  case ErrorCode::BadAlpha: return "BadAlpha";
  case ErrorCode::WrongBasisSize: return "WrongBasisSize";
  case ErrorCode::BadParams: return "BadParams";
  case ErrorCode::DegenerateComponent: return "DegenerateComponent";
  case ErrorCode::LengthMismatch: return "LengthMismatch";
  case ErrorCode::ConstantVector: return "ConstantVector";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::EmptyInput: return "EmptyInput";
  case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
  case ErrorCode::ConvergenceFailure:
  case ErrorCode::SingularShiftedMatrix:
  case ErrorCode::ConstantVector:
    return 4;
  default:
    return 3;
  }
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(message), code_(code) {}

namespace {
std::string convergence_message(std::size_t iterations, double residual) {
  std::ostringstream os;
  os << "eigensolver did not converge after " << iterations
     << " operator applications (worst residual " << residual << ")";
  return os.str();
}
} // namespace

ConvergenceError::ConvergenceError(std::size_t iterations, double worst_residual)
    : Error(ErrorCode::ConvergenceFailure,
            convergence_message(iterations, worst_residual)),
      iterations_(iterations), worst_residual_(worst_residual) {}

ParseError::ParseError(std::size_t line, const std::string &message)
    : Error(ErrorCode::ParseError,
            line == 0 ? message : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

} // namespace lapinv
