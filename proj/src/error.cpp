#include "hecke/error.hpp"

namespace hecke {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::OrderNotSupported: return "OrderNotSupported";
    case ErrorKind::InvalidGroup: return "InvalidGroup";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::LevelNotAdmissibleClass: return "LevelNotAdmissibleClass";
    case ErrorKind::InconsistentValues: return "InconsistentValues";
    case ErrorKind::InstanceMismatch: return "InstanceMismatch";
    case ErrorKind::CompatibilityViolation: return "CompatibilityViolation";
    case ErrorKind::WellDefinednessFailure: return "WellDefinednessFailure";
    case ErrorKind::ParentMismatch: return "ParentMismatch";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::NonSplitBlock: return "NonSplitBlock";
    case ErrorKind::NotSemisimple: return "NotSemisimple";
    case ErrorKind::CoefficientsNotCentral: return "CoefficientsNotCentral";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::NotPermutation: return "NotPermutation";
    case ErrorKind::NoTwistConfigured: return "NoTwistConfigured";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::IncompatibleInstance: return "IncompatibleInstance";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::BoundsExceeded: return "BoundsExceeded";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace hecke
