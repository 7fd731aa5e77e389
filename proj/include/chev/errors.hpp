#pragma once

#include <stdexcept>
#include <string>

namespace chev {

enum class ErrorCode {
  // input errors
  NotSquarefree,
  DegenerateInput,
  SquareInput,
  NotPrime,
  BadSpec,
  DiscriminantMismatch,
  NotAutomorphism,
  NotExactInput,
  NotCyclic,
  BadHom,
  // effort bounds
  EffortExceeded,
  SearchBoundExceeded,
  // mathematical failures
  InfiniteQ,
  InfiniteCohomology,
  CrossCheckFailed,
  DiscreteLogFailure,
  CheckFailed,
};

const char* error_code_name(ErrorCode code);

// Base of every error thrown by the library. The category decides the CLI
// exit code: input errors map to 2, effort errors to 3, math errors to 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class EffortError : public Error {
 public:
  using Error::Error;
};

class MathError : public Error {
 public:
  using Error::Error;
};

}  // namespace chev
