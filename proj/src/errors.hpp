#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gaexplain {

/// Root of the library's exception hierarchy. Every subtype maps onto one
/// status code at the C boundary.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed DIMACS, CSV or model text. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Training data that cannot produce a model (zero variance, too few rows).
class DegenerateData : public Error {
 public:
  using Error::Error;
};

class EmptyTrainingSet : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A predictor raised while being probed.
class PredictorFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace gaexplain
