#pragma once

#include <stdexcept>
#include <string>

namespace weightlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on a numeric argument was violated (p <= 1, mu outside (0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two operands live on different grids.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A name (suite, family, operator, config key) did not resolve.
class NameError : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

}  // namespace weightlab
