#pragma once

#include <stdexcept>
#include <string>

namespace morse {

enum class ErrorCode {
  // configuration
  DuplicateLabel,
  MissingPartner,
  DuplicateComponent,
  NotRealizable,
  // events
  NotAdjacent,
  SelfSlide,
  UnknownLabel,
  // file format
  ParseError,
  // splice
  NotStarlike,
  MismatchedN,
  NonClosedInput,
  NonTermination,
  InvalidPoint,
  // torus pages
  NotTorusPage,
  PatternMismatch,
  // rendering
  NonRunnable,
};

const char* to_string(ErrorCode code);

/// Every library failure is reported through this exception. The code is
/// stable and machine-checkable; the message names the offending object.
class MorseError : public std::runtime_error {
 public:
  MorseError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse errors additionally carry the 1-based line number.
class ParseError : public MorseError {
 public:
  ParseError(int line, const std::string& message)
      : MorseError(ErrorCode::ParseError,
                   "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace morse
