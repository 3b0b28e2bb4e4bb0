#pragma once

#include <stdexcept>
#include <string>

namespace netwf {

// Bad arguments or mismatched shapes/labels supplied by the caller.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed or unusable input data (files, empty observations).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown: NaN/Inf in iterates, factorization failure.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace netwf
