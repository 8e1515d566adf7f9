#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chipfire {

enum class ErrorKind {
  SelfLoop,
  Disconnected,
  BadMultiplicity,
  BadK,
  SameVertex,
  UnknownVertex,
  NotEquivalent,
  NotEffectiveTarget,
  HostMismatch,
  BudgetExceeded,
  NotIndependent,
  IncompleteOrientation,
  UnexpectedDebtPattern,
  BadParams,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::BadMultiplicity: return "BadMultiplicity";
    case ErrorKind::BadK: return "BadK";
    case ErrorKind::SameVertex: return "SameVertex";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::NotEquivalent: return "NotEquivalent";
    case ErrorKind::NotEffectiveTarget: return "NotEffectiveTarget";
    case ErrorKind::HostMismatch: return "HostMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotIndependent: return "NotIndependent";
    case ErrorKind::IncompleteOrientation: return "IncompleteOrientation";
    case ErrorKind::UnexpectedDebtPattern: return "UnexpectedDebtPattern";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace chipfire
