#pragma once

#include <stdexcept>
#include <string>

namespace proxpoint {

/// Input vector length does not match the operator or problem dimension.
class DimensionError : public std::invalid_argument {
public:
  DimensionError(const std::string& where, long expected, long actual)
      : std::invalid_argument(where + ": expected length " + std::to_string(expected) +
                              ", got " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  long expected() const { return expected_; }
  long actual() const { return actual_; }

private:
  long expected_;
  long actual_;
};

/// A solver run could not complete (inner stall, NaN, ...).
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace proxpoint
