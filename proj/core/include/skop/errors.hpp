#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skop {

enum class ErrorKind {
  InvalidInput,
  Unsupported,
  NonConvergent,
  Diverging,
  PoleAtDiagonal,
  DenominatorVanishes,
  InconsistentBranches,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception for all library failures. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::Diverging: return "Diverging";
    case ErrorKind::PoleAtDiagonal: return "PoleAtDiagonal";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::InconsistentBranches: return "InconsistentBranches";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::InvalidInput, message);
}

}  // namespace skop
