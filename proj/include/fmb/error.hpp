#pragma once

#include <stdexcept>
#include <string>

namespace fmb {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  DegreeOverflow,
  OrderOverflow,
  TooFewMatches,
  DegenerateCloud,
  DegenerateConfiguration,
  RankDeficientInput,
  RankDeficiencyViolated,
  PointAtInfinity,
  ExtractionFailed,
  NumericalFailure,
  CameraBehindScene,
  ParseError,
  IoError,
  SolverFailure,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace fmb
