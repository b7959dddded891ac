#pragma once

#include <stdexcept>

namespace narmkit {

// Error taxonomy used throughout the library. Everything derives from
// std::runtime_error so callers can catch broadly or per kind.

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IndexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace narmkit
