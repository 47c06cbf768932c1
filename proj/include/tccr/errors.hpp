#pragma once

#include <stdexcept>
#include <string>

namespace tccr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested basis exceeds the configured dimension limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Non-finite entries, failed decompositions, divergent series.
class NumericError : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public NumericError {
 public:
  NotPsdError(const std::string& what, double eigenvalue)
      : NumericError(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

// A relation degree does not fit below the truncation cap.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class BasisMismatchError : public Error {
 public:
  using Error::Error;
};

// Input family does not satisfy the relations a construction assumes.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace tccr
