#pragma once

#include <stdexcept>
#include <string>

namespace biasprobe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: missing files, malformed rows, invalid config.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numeric precondition was violated (zero denominator, zero variance, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Network or API failure while fetching corpus frequencies.
class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace biasprobe
