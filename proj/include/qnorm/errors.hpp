#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qnorm {

enum class ErrorCode {
  NotAUnit,
  ZeroDivisor,
  NonMonicDivisor,
  UndefinedGcd,
  UndefinedSeparability,
  AlgebraMismatch,
  NotPrimitive,
  NotSeparable,
  InvalidModulus,
  DimensionMismatch,
  Degenerate,
  IsotropicMirror,
  NotAnIsometry,
  SamplingExhausted,
  RankOneUnsupported,
  UnitConditionViolated,
  NonUnitInput,
  DomainTooLarge,
  NonzeroRemainder,
  InternalInvariant,
};

std::string_view to_string(ErrorCode code);

/// Failure of a mathematical precondition or of a sampling budget.
class MathError : public std::runtime_error {
 public:
  MathError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Internal-invariant failures indicate a bug rather than bad input.
  bool is_internal() const noexcept {
    return code_ == ErrorCode::NonzeroRemainder ||
           code_ == ErrorCode::InternalInvariant;
  }

 private:
  ErrorCode code_;
};

/// Malformed textual or JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw MathError(code, std::string(to_string(code)) + ": " + what);
}

inline void ensure(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCode::InternalInvariant, what);
}

}  // namespace qnorm
