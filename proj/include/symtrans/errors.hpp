#pragma once

#include <stdexcept>
#include <string>

namespace symtrans {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonSquare : public Error {
 public:
  using Error::Error;
};

class Singular : public Error {
 public:
  using Error::Error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class NotSymplectic : public Error {
 public:
  using Error::Error;
};

class NotIsotropic : public Error {
 public:
  using Error::Error;
};

class SamplingExhausted : public Error {
 public:
  using Error::Error;
};

class NotInVariety : public Error {
 public:
  using Error::Error;
};

class IncompatibleJ : public Error {
 public:
  using Error::Error;
};

class NonConstantCubic : public Error {
 public:
  using Error::Error;
};

/// Malformed input text; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace symtrans
