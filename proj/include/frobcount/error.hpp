#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frobcount {

enum class ErrorCode {
  NonSquarefreeDisc,
  InvalidDisc,
  DegreeTooHigh,
  CutoffExceeded,
  AmbiguousOrder,
  ZeroInput,
  HasseViolation,
  MismatchedPrime,
  FieldMismatch,
  BeyondScan,
  BadAlphaPair,
  DomainTooSmall,
  EllTooLarge,
  EllDividesBoth,
  ZeroDet,
  ParseError,
  CacheInvalid,
  MissingTable,
  Overflow,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported through this type; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace frobcount
