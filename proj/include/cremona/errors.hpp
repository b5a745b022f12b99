#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cremona {

enum class ErrorCode {
  ParseError,
  InvalidMap,
  IsAPoint,
  NotOnCenter,
  DegenerateFrame,
  DegenerateLine,
  SamplingExhausted,
  CollinearBasePoints,
  PreconditionViolated,
  NotDecontracted,
  NotJonquieres,
  NotInDecL,
  NotInAL,
  InternalInconsistency,
  ResourceLimit,
  IrrationalBasePoints,
};

std::string_view error_name(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code.
class CremonaError : public std::runtime_error {
 public:
  CremonaError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw CremonaError(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace cremona
