#pragma once

#include <stdexcept>
#include <string>

namespace sfr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid radar/solver configuration or out-of-range index.
struct ConfigError : Error {
  using Error::Error;
};

/// Operands whose shapes do not agree (profile vs. config, TRM vs. schedule, ...).
struct DimensionError : Error {
  using Error::Error;
};

/// Non-finite or otherwise unusable numeric input.
struct InputError : Error {
  using Error::Error;
};

struct SolverError : Error {
  using Error::Error;
};

/// Parse failure in one of the on-disk formats.
struct FormatError : Error {
  enum class Kind { Io, MalformedHeader, DimensionMismatch, NonFiniteSample, BadRecord };

  FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace sfr
