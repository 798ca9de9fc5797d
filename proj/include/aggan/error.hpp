#pragma once

#include <stdexcept>
#include <string>

namespace aggan {

/// Shape disagreement between an operand and what the network spec requires.
struct DimensionError : std::runtime_error {
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

/// A tape that does not belong to the forward pass it is replayed against.
struct TapeError : std::runtime_error {
  explicit TapeError(const std::string& what) : std::runtime_error(what) {}
};

/// NaN/Inf surfaced where finite values are required.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Caller passed a value outside an operation's domain.
struct ArgumentError : std::invalid_argument {
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed or invalid experiment configuration.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem / parse failures on artifact files (checkpoints, CSVs).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aggan
