#pragma once

#include <stdexcept>
#include <string>

namespace sectionlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

// Raised when normalizing into the zero-mean sphere S(F) hits a (numerically) constant input.
class ConstantPolynomial : public Error {
 public:
  using Error::Error;
};

class OriginNotInterior : public Error {
 public:
  using Error::Error;
};

class NonpositiveRadius : public Error {
 public:
  using Error::Error;
};

class DegenerateToPoint : public Error {
 public:
  using Error::Error;
};

class NotARotation : public Error {
 public:
  using Error::Error;
};

class NotDecomposable : public Error {
 public:
  using Error::Error;
};

class ZeroBivector : public Error {
 public:
  using Error::Error;
};

// A function whose zero set is not finite (h == c everywhere).
class DegenerateFunction : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; line is 1-based (0 when unknown).
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, int line) : ValidationError(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace sectionlab
