/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <stdexcept>
#include <string>

namespace nrusim {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Value outside the segment or domain an operation is defined on.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Physically meaningless input (negative distance, zero bandwidth, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Bad or inconsistent configuration data (unknown jurisdiction, profile, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A scenario or data file that parsed but broke a named invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, int line, const std::string& what)
      : Error(format(field, line, what)), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  /// 1-based source line, or 0 when unknown.
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, int line, const std::string& what) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + what;
  }

  std::string field_;
  int line_;
};

/// An operation invoked out of order (session before registration, ...).
class StateError : public Error {
 public:
  using Error::Error;
};

/// A simulation-time invariant was breached; results must not be trusted.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

}  // namespace nrusim
