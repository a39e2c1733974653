#ifndef SPINEL_INTERNAL_CHECKER_HPP
#define SPINEL_INTERNAL_CHECKER_HPP

#include <stdexcept>
#include <string>

#include "spinel/syntax.hpp"

namespace spinel {

/// Typing failure of the explicitly typed checker.
struct InternalTypeError : std::runtime_error {
  enum class Reason {
    UnboundVariable,
    NotAnArrow,
    DomainMismatch,
    NotAForall,
    IllFormedType,
    MissingAnnotation,
    Shadowing,
  };

  InternalTypeError(Reason reason, const std::string& what)
      : std::runtime_error(what), reason(reason) {}

  Reason reason;
};

/// Declarative type checker for explicitly typed System F. Independent of
/// the inference engine; it serves as the soundness oracle for elaborations.
/// Throws InternalTypeError.
Type check_internal(const Context& ctx, const Term& e);

}  // namespace spinel

#endif  // SPINEL_INTERNAL_CHECKER_HPP
