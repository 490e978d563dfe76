#pragma once

#include <stdexcept>
#include <string>

namespace trivext {

enum class ErrorKind {
  InvalidDescriptor,
  AxiomViolation,
  RingMismatch,
  NotAUnit,
  NotFinite,
  NotLocal,
  TooLarge,
  BudgetExceeded,
  WrongShape,
  ImproperIdeal,
  PrecisionTooSmall,
  UnsupportedModule,
  Syntax,
  Usage,
  Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse errors carry a source position and the token set that was expected.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int col, std::string expected, std::string message)
      : Error(ErrorKind::Syntax,
              "line " + std::to_string(line) + ", col " + std::to_string(col) +
                  ": " + message + " (expected " + expected + ")"),
        line_(line), col_(col), expected_(std::move(expected)) {}
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  int col_;
  std::string expected_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

// Internal consistency failures signal an implementation bug; callers are not
// expected to recover from these.
[[noreturn]] inline void fatal_inconsistency(const std::string& msg) {
  throw Error(ErrorKind::AxiomViolation, msg);
}

}  // namespace trivext
