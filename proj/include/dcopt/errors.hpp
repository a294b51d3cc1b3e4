#pragma once

#include <stdexcept>
#include <string>

namespace dcopt {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument left the domain where a function is real-valued or proven.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A parameter or configuration violated a documented bound.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

/// Weights became non-finite during training.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed file content. The message carries the offending line number.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcopt
