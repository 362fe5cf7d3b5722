#pragma once

#include <stdexcept>
#include <string>

namespace araweat {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Embedding file could not be read or decoded.
class LoadError : public Error {
 public:
  using Error::Error;
};

// Bias specification violates its invariants or cannot be resolved.
class SpecError : public Error {
 public:
  using Error::Error;
};

// Metric preconditions not met (too few terms, mismatched dimensions, ...).
class MetricError : public Error {
 public:
  using Error::Error;
};

// Malformed audit configuration or report.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace araweat
