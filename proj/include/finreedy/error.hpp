#pragma once

#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace finreedy {

enum class ErrorKind {
  Parse,
  DuplicateId,
  DanglingReference,
  MissingComposition,
  ConflictingComposition,
  BrokenAssociativity,
  NotComposable,
  NotAFunctor,
  SizeLimit,
  DegreeViolation,
  FactorizationMissing,
  FactorizationAmbiguous,
  NotClosed,
  NotReedy,
  BadAnchor,
  NotFunctorial,
  MissingFunction,
  BadElement,
  ShapeMismatch,
  NotNatural,
  PreconditionFailed,
  GenerationFailed,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::MissingComposition: return "MissingComposition";
    case ErrorKind::ConflictingComposition: return "ConflictingComposition";
    case ErrorKind::BrokenAssociativity: return "BrokenAssociativity";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::NotAFunctor: return "NotAFunctor";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::DegreeViolation: return "DegreeViolation";
    case ErrorKind::FactorizationMissing: return "FactorizationMissing";
    case ErrorKind::FactorizationAmbiguous: return "FactorizationAmbiguous";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotReedy: return "NotReedy";
    case ErrorKind::BadAnchor: return "BadAnchor";
    case ErrorKind::NotFunctorial: return "NotFunctorial";
    case ErrorKind::MissingFunction: return "MissingFunction";
    case ErrorKind::BadElement: return "BadElement";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotNatural: return "NotNatural";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is reported through this type;
/// `what()` carries the kind followed by the offending identifiers.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Process-wide resource bounds. `max_morphisms` bounds every constructed
/// category; `max_elements` bounds set enumeration in limits and colimits.
struct SizeGuard {
  std::atomic<std::size_t> max_morphisms{10000};
  std::atomic<std::size_t> max_elements{1000000};
};

inline SizeGuard& size_guard() {
  static SizeGuard guard;
  return guard;
}

inline void check_morphism_budget(std::size_t count, const std::string& what) {
  const std::size_t bound = size_guard().max_morphisms.load();
  if (count > bound) {
    throw Error(ErrorKind::SizeLimit, what + " has " + std::to_string(count) +
                                          " morphisms (limit " + std::to_string(bound) + ")");
  }
}

inline void check_element_budget(std::size_t count, const std::string& what) {
  const std::size_t bound = size_guard().max_elements.load();
  if (count > bound) {
    throw Error(ErrorKind::SizeLimit, what + " exceeds " + std::to_string(bound) + " elements");
  }
}

}  // namespace finreedy
