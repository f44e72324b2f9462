// fanstalk: typed error conditions shared by all modules.
// Distributed under the MIT license; see LICENSE.

#ifndef FANSTALK_ERROR_HPP
#define FANSTALK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fanstalk {

/// Every failure the library can signal, by name.  Tests match on the kind,
/// messages are for humans.
enum class ErrorKind {
  // parsing
  SyntaxError,
  UnknownVariable,
  NotBinomial,
  NegativeExponent,
  EmptySystem,
  // polyhedra
  ZeroVector,
  NotPointed,
  OutsideOrthant,
  RayOutsideSupport,
  NotMaximal,
  AmbiguousVertex,
  // stacky fans
  MissingUnitRay,
  RankDeficient,
  NotPure,
  OneSidedBinomial,
  // transforms
  DimensionMismatch,
  IrrationalRoot,
  NotSchoen,
  TooManyMembers,
  // coset arrangements
  Inconsistent,
  NotSimple,
  // chart decompositions
  NotTotallyOrdered,
  // finite-field oracle
  FieldTooLarge,
  TooManyCoordinates,
  BadCharacteristic,
  // reporting
  NumberOverflow,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::NotBinomial: return "NotBinomial";
    case ErrorKind::NegativeExponent: return "NegativeExponent";
    case ErrorKind::EmptySystem: return "EmptySystem";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::OutsideOrthant: return "OutsideOrthant";
    case ErrorKind::RayOutsideSupport: return "RayOutsideSupport";
    case ErrorKind::NotMaximal: return "NotMaximal";
    case ErrorKind::AmbiguousVertex: return "AmbiguousVertex";
    case ErrorKind::MissingUnitRay: return "MissingUnitRay";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::OneSidedBinomial: return "OneSidedBinomial";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IrrationalRoot: return "IrrationalRoot";
    case ErrorKind::NotSchoen: return "NotSchoen";
    case ErrorKind::TooManyMembers: return "TooManyMembers";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::NotTotallyOrdered: return "NotTotallyOrdered";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::TooManyCoordinates: return "TooManyCoordinates";
    case ErrorKind::BadCharacteristic: return "BadCharacteristic";
    case ErrorKind::NumberOverflow: return "NumberOverflow";
  }
  return "UnknownError";
}

/// Library-wide exception.  Carries a machine-checkable kind plus a message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind),
        message_(message) {}

  ErrorKind kind() const { return kind_; }

  /// The message without the kind prefix (for rewrapping with context).
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

} // namespace fanstalk

#endif // FANSTALK_ERROR_HPP
