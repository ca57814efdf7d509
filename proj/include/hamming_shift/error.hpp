#pragma once

#include <stdexcept>
#include <string>

namespace hamming_shift {

enum class ErrorKind {
  WidthMismatch,
  InvalidResidue,
  NotDivisible,
  OutOfRange,
  LengthMismatch,
  NonMaximalPattern,
  InvalidLength,
  InfeasibleCarries,
  InfeasibleType,
  EmptyInput,
  TooWide,
  NoEligibleBlocks,
  DegenerateAlpha,
  WrongTypes,
  DegenerateEllipse,
  ParseError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hamming_shift
