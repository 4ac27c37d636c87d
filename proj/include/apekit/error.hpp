#pragma once

#include <stdexcept>
#include <string>

namespace apekit {

/// Base of all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or usage. The CLI maps it to exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data, I/O failures. The CLI maps it to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A statistic that is mathematically undefined for the given input
/// (e.g. kappa when chance agreement is 1).
class UndefinedStatistic : public Error {
 public:
  using Error::Error;
};

}  // namespace apekit
