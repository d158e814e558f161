#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qb {

enum class ErrorKind {
  InvalidInput,
  Parse,
  InconsistentValuation,
  InvalidAutomorphism,
  SizeLimitExceeded,
  NotPrime,
  DegreeTooLarge,
  DivisionByZero,
  NotASubfield,
  LoopInOrbit,
  NotAcyclic,
  IndexMismatch,
  LoopPresent,
  NotConnected,
  SpeciesMismatch,
  NotSigmaConstant,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InconsistentValuation: return "InconsistentValuation";
    case ErrorKind::InvalidAutomorphism: return "InvalidAutomorphism";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotASubfield: return "NotASubfield";
    case ErrorKind::LoopInOrbit: return "LoopInOrbit";
    case ErrorKind::NotAcyclic: return "NotAcyclic";
    case ErrorKind::IndexMismatch: return "IndexMismatch";
    case ErrorKind::LoopPresent: return "LoopPresent";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::SpeciesMismatch: return "SpeciesMismatch";
    case ErrorKind::NotSigmaConstant: return "NotSigmaConstant";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

/// Default bound on exhaustive enumerations.
inline constexpr std::uint64_t kDefaultCap = 1'000'000;

}  // namespace qb
