#pragma once

#include <stdexcept>
#include <string>

namespace qspec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroDivisor : public Error {
 public:
  ZeroDivisor() : Error("inverse of the zero quaternion") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Eigenvalue iteration exceeded its sweep cap or met non-finite values.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Ragged or inconsistent matrix shape in an input file.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The sequence lies outside the domain of the constructive generalized limit.
class NotAlmostConvergent : public Error {
 public:
  using Error::Error;
};

class BoundViolation : public Error {
 public:
  using Error::Error;
};

class NotCommuting : public Error {
 public:
  using Error::Error;
};

class UnsupportedRule : public Error {
 public:
  using Error::Error;
};

}  // namespace qspec
