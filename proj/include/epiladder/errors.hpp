#pragma once

#include <stdexcept>
#include <string>

namespace epiladder {

/// Base class for every error raised by the library. `kind()` is a short
/// machine-readable tag that the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Sizes of worlds, matrices and agent counts disagree.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message) : Error("dimension", message) {}
};

/// An announcement or instance would eliminate the actual world, or an
/// instance violates one of its invariants.
class InconsistentInstance : public Error {
 public:
  explicit InconsistentInstance(const std::string& message) : Error("inconsistent", message) {}
};

/// Malformed configuration, grid, template or name pool.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config", message) {}
};

/// A file does not match the expected record schema.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& message) : Error("schema", message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

/// Input that must not be empty was empty.
class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& message) : Error("empty", message) {}
};

class CredentialError : public Error {
 public:
  explicit CredentialError(const std::string& message) : Error("credentials", message) {}
};

}  // namespace epiladder
