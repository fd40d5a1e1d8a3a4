#pragma once

#include <stdexcept>
#include <string>

namespace sg {

enum class ErrorCode {
  Context,
  Syntax,
  UnknownIdentifier,
  BadExponent,
  DimensionMismatch,
  NotHomogeneous,
  NotSquare,
  NotInvertible,
  NeitherBlockInvertible,
  NonConstantBody,
  PointNotOnVariety,
  ReservedGeneratorCollision,
  MalformedSplit,
  Unbound,
  Io,
  Invalid,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : Error(ErrorCode::Syntax, what + " at " + std::to_string(line) + ":" +
                                     std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace sg
