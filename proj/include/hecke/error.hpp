#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hecke {

enum class ErrorKind {
  DivisionByZero,
  FieldMismatch,
  OrderNotSupported,
  InvalidGroup,
  NotASubgroup,
  NotNormal,
  NotAHomomorphism,
  NotAUnit,
  LevelNotAdmissibleClass,
  InconsistentValues,
  InstanceMismatch,
  CompatibilityViolation,
  WellDefinednessFailure,
  ParentMismatch,
  NotNested,
  NonSplitBlock,
  NotSemisimple,
  CoefficientsNotCentral,
  NotIdempotent,
  NotPermutation,
  NoTwistConfigured,
  BaseMismatch,
  IncompatibleInstance,
  ConfigError,
  BoundsExceeded,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a block of a semisimple algebra is not a full matrix algebra
/// over the configured coefficient field.
class NonSplitBlockError : public Error {
 public:
  NonSplitBlockError(const std::string& what, long suggested_conductor)
      : Error(ErrorKind::NonSplitBlock,
              what + " (try field conductor " + std::to_string(suggested_conductor) + ")"),
        detail_(what),
        suggested_conductor_(suggested_conductor) {}

  /// The message without the kind prefix and the conductor hint.
  const std::string& detail() const noexcept { return detail_; }
  long suggested_conductor() const noexcept { return suggested_conductor_; }

 private:
  std::string detail_;
  long suggested_conductor_;
};

/// Config problems carry the JSON pointer (or byte offset) they refer to.
class ConfigError : public Error {
 public:
  ConfigError(std::string location, const std::string& what)
      : Error(ErrorKind::ConfigError, location + ": " + what), location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace hecke
