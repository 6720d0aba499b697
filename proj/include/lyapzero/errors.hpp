#pragma once

#include <stdexcept>
#include <string>

namespace lyapzero {

// Invalid or incoherent input parameters (bad rank, k out of range,
// representation not defined for the given real form, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// The request is well-formed but outside what the library realizes
// (spin representations as matrices, rank bounds for unsupported pairs).
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

// Floating point breakdown: non-convergent exponential, overflow in a
// product of group elements.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lyapzero
