#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cra {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
  using Error::Error;
};

class BadInterval : public Error {
public:
  using Error::Error;
};

class NestingViolation : public Error {
public:
  using Error::Error;
};

class BadStraddle : public Error {
public:
  using Error::Error;
};

class DomainEscape : public Error {
public:
  using Error::Error;
};

class WitnessInvalid : public Error {
public:
  using Error::Error;
};

class GapCollapse : public Error {
public:
  using Error::Error;
};

class BadBounds : public Error {
public:
  using Error::Error;
};

class SourceViolation : public Error {
public:
  using Error::Error;
};

class PrecheckFailed : public Error {
public:
  using Error::Error;
};

class InvariantViolation : public Error {
public:
  using Error::Error;
};

// Parse failures carry a 1-based line/column of the offending token.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace cra
