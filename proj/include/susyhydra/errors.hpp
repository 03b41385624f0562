#pragma once

#include <stdexcept>
#include <string>

namespace susyhydra {

// Numeric values are part of the C ABI (see susyhydra.h); append only.
enum class ErrorCode : int {
  invalid_argument = 1,
  pole = 2,
  domain = 3,
  convergence = 4,
  grid_mismatch = 5,
  tail_divergence = 6,
  singular_beta = 7,
  undetermined = 8,
  case_mismatch = 9,
  degenerate = 10,
  singular_eta = 11,
  insufficient_range = 12,
  collision = 13,
  parse = 14,
  io = 15,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

template <ErrorCode Code> class CodedError : public Error {
public:
  explicit CodedError(const std::string &what) : Error(Code, what) {}
};

using InvalidArgumentError = CodedError<ErrorCode::invalid_argument>;
using PoleError = CodedError<ErrorCode::pole>;
using DomainError = CodedError<ErrorCode::domain>;
using ConvergenceError = CodedError<ErrorCode::convergence>;
using GridMismatchError = CodedError<ErrorCode::grid_mismatch>;
using TailDivergenceError = CodedError<ErrorCode::tail_divergence>;
using SingularBetaError = CodedError<ErrorCode::singular_beta>;
using UndeterminedError = CodedError<ErrorCode::undetermined>;
using CaseMismatchError = CodedError<ErrorCode::case_mismatch>;
using DegenerateError = CodedError<ErrorCode::degenerate>;
using SingularEtaError = CodedError<ErrorCode::singular_eta>;
using InsufficientRangeError = CodedError<ErrorCode::insufficient_range>;
using CollisionError = CodedError<ErrorCode::collision>;
using ParseError = CodedError<ErrorCode::parse>;
using IoError = CodedError<ErrorCode::io>;

} // namespace susyhydra
