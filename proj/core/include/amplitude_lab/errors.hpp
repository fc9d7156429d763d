#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace amplitude_lab {

enum class ErrorCode {
  InvalidAlgebra,
  ShapeError,
  NotPositive,
  DomainError,
  NotFaithful,
  EmptyReduction,
  NotFactor,
  NotQuotient,
  InvalidEmbedding,
  NotUnital,
  TooLarge,
  SingularMeasure,
  InvalidCovariance,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// front ends can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace amplitude_lab
