#pragma once

#include <stdexcept>
#include <string>

namespace percolab {

enum class ErrorCode {
  NotRegular,
  DuplicateEdge,
  SelfLoop,
  OddDegreeSum,
  VertexOutOfRange,
  DegreeTooLarge,
  RetryLimitExceeded,
  NotPrime,
  WrongResidueClass,
  UnknownFamily,
  Disconnected,
  ProbabilityOutOfRange,
  TooManyEdges,
  AlphaTooLarge,
  SampleGraphMismatch,
  KTooLarge,
  AlphaNotSupercritical,
  AlphaCritical,
  KTooLargeForBound,
  NTooSmall,
  WindowEmpty,
  ConfigInvalid,
  InvalidArgument,
  ParseError,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace percolab
